"""
Two weight classes that do not contain each other
=================================================

A weighted shift is determined by its weights.  Two sufficient conditions
show up when asking whether normalized orbits look like the standard basis:

* the *delta supremum* is finite (ratios of shifted weight products are
  uniformly square-summable),
* the weights are monotone non-increasing and square-summable.

Neither implies the other.  Harmonic weights are monotone and in l^2 but
their delta supremum diverges; the alternating family below has a small
delta supremum but is not monotone.
"""

from shiftlattice.weights import (
    an_integral_bound,
    an_partial,
    check_condition_34,
    delta_estimate,
    parse_family,
)

harmonic = parse_family("harmonic")
alternating = parse_family("alternating38")

print("first weights")
print("  harmonic     ", [str(harmonic(n)) for n in range(1, 7)])
print("  alternating38", [str(alternating(n)) for n in range(0, 6)])

#####################################################
#
# Monotone and square-summable
# ----------------------------
#
# The exact prefix check walks 10^4 weights.  A failure names the first
# index where a weight goes up.

for f in (harmonic, alternating):
    r = check_condition_34(f, 10_000)
    print(f"{f.name():15s} holds={r.holds}  witness={r.witness}  ({r.reason})")

#####################################################
#
# The delta supremum
# ------------------
#
# For alternating weights the grid of partial sums stabilizes well below
# 17 + 15/16.

est = delta_estimate(alternating, K=200, M_max=50, cap=1e3)
print(f"\nalternating38: delta >= {est.lower_bound:.6f}  [{est.status}]  witness (m, n) = {est.witness}")

#####################################################
#
# For harmonic weights the diagonal cell m = n is
# a_n = sum_k (n / (n + k))^2, which grows roughly like n.  Its partial sums
# already beat n^2 / (n + 1).

for n in (1, 5, 10, 25, 50):
    print(f"  a_{n:<2d} ~ {an_partial(n, 10**6):10.4f}   >= {an_integral_bound(n):8.4f}")

diag = delta_estimate(harmonic, K=10_000, M_max=1500, cap=1e3, diagonal_only=True)
print(f"harmonic diagonal: {diag.lower_bound:.1f} at {diag.witness}  [{diag.status}]")
