"""
Subspaces invariant under both T*^2 and T*^3
============================================

Closing under both powers forces the subspace to be almost a chain:
span{e_0, ..., e_{n-2}, alpha e_{n-1} + beta e_n}.
"""

from fractions import Fraction

from shiftlattice.classify import classify_joint, construct_joint, random_invariant
from shiftlattice.invariants import is_invariant
from shiftlattice.shifts import ShiftSpec
from shiftlattice.weights import parse_family

spec = ShiftSpec(parse_family("alternating38"), 12)

for seed in range(6):
    s = random_invariant(spec, (2, 3), 1 + seed, seed)
    f = classify_joint(s, spec)
    print(f"dim {s.dim}: alpha = {f['alpha']}, beta = {f['beta']}")

#####################################################
#
# Conversely any such span is invariant under both powers, whatever alpha
# and beta are.

s = construct_joint(5, Fraction(3, 7), -2, 12)
print("\ninvariant under T*^2 and T*^3:", is_invariant(s, spec, 2) and is_invariant(s, spec, 3))
print(classify_joint(s, spec).params)
