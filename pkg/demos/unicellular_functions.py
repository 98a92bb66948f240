"""
Analytic functions of a nilpotent shift
=======================================

f(S) is again a single Jordan block (so its invariant subspaces form a
chain) exactly when f'(0) != 0.  At finite dimension this is a rank test:
rank f(S)^j = N - j for every j.
"""

from shiftlattice.asymptotics import cor44_check
from shiftlattice.shifts import AnalyticFn, ShiftSpec, geometric_poly, power_weighted_poly, z_times_one_plus_z
from shiftlattice.weights import parse_family

functions = {
    "z(1+z)^2": z_times_one_plus_z(3),
    "z + z^2 + z^3 + z^4": geometric_poly(4),
    "sum i^2 z^i": power_weighted_poly(4, 2),
    "3 + z - z^5": AnalyticFn((3, 1, 0, 0, 0, -1)),
    "z^2": AnalyticFn((0, 0, 1)),
}

for N in (8, 16):
    spec = ShiftSpec(parse_family("donoghue"), N)
    print(f"N = {N}")
    for name, f in functions.items():
        r = cor44_check(f, spec)
        print(f"  {name:22s} f'(0) != 0: {r.hypothesis_met!s:5s}  single block: {r.unicellular!s:5s}  "
              f"ranks {list(r.rank_profile[:4])}...")
