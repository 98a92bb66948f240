"""
Normalized forward orbits approach the basis
============================================

For a vector x with x_0 != 0, the normalized orbit T^n x / (x_0 w_0...w_{n-1})
differs from e_n by a residual that is at most C w_n^2 when the delta
supremum is finite.  Summing the residuals gives the quadratic-closeness
partial sums, which stabilize for square-summable weights and keep growing
for constant ones.
"""

import numpy as np

from shiftlattice.asymptotics import closeness_partials, closeness_status, reports_to_csv, thm36_sweep
from shiftlattice.weights import parse_family

rng = np.random.default_rng(7)
x = rng.normal(size=128)
x[0] = 1.0

for name in ("alternating38", "donoghue"):
    reps = thm36_sweep(parse_family(name), x, 30, 128)
    worst = max(r.residual / r.bound for r in reps if r.bound > 0)
    partials = closeness_partials(reps)
    print(f"{name:14s} all within bound: {all(r.passed for r in reps)}  worst ratio {worst:.3f}  "
          f"closeness {partials[-1]:.6g} ({closeness_status(partials)})")

flat = thm36_sweep(parse_family("constant:1"), x[:8], 30, 8)
print("constant:1     closeness", closeness_status(closeness_partials(flat)))

#####################################################
#
# The sweep is also available as CSV, ready for any plotting tool.

print()
print("".join(reports_to_csv(thm36_sweep(parse_family("donoghue"), x, 30, 128)).splitlines(True)[:6]))
