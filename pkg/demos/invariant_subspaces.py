"""
Invariant subspaces of shift powers
===================================

The square and the cube of a truncated weighted backward shift are nilpotent
with two and three Jordan blocks.  Their invariant subspaces are direct sums
of at most two (three) cyclic orbits, and they have short canonical forms.

Everything here is exact rational arithmetic.
"""

from shiftlattice.classify import classify_t2, classify_t3, construct_t2, random_invariant
from shiftlattice.exactlin import add, span, top_index, unit
from shiftlattice.invariants import cyclic_orbit, is_invariant, nilpotent_decompose
from shiftlattice.shifts import ShiftSpec, matrix_of
from shiftlattice.weights import parse_family

N = 10
spec = ShiftSpec(parse_family("donoghue"), N)
e = lambda i: unit(N, i)

print("T* on the first four coordinates:")
for row in matrix_of(spec, 1).rows[:4]:
    print("  ", [str(v) for v in row[:5]])

#####################################################
#
# Orbits
# ------
#
# T*^2 drops the top index by two, so the orbit of e_5 has three members.

for v in cyclic_orbit(e(5), spec, 2):
    print("  ", [str(c) for c in v[:6]])

#####################################################
#
# A non-cyclic T*^2-invariant subspace
# ------------------------------------

s = span(N, [e(0), e(1), e(3)])
print("\ninvariant under T*^2:", is_invariant(s, spec, 2), " under T*:", is_invariant(s, spec, 1))
dec = nilpotent_decompose(s, spec, 2)
print("generator tops and orbit lengths:", [(top_index(x), m) for x, m in dec.generators])
form = classify_t2(s, spec)
print("canonical form:", form.tag, form.params)
print("rebuilt equals input:", construct_t2(form["n"], form["p"], form.x, spec) == s)

#####################################################
#
# Random subspaces for the cube
# -----------------------------
#
# Random invariant subspaces come from a seeded generator.  Every one of
# them classifies and the decomposition has at most three generators.

for seed in range(8):
    s = random_invariant(spec, 3, 4, seed)
    f = classify_t3(s, spec)
    lengths = nilpotent_decompose(s, spec, 3).orbit_lengths
    print(f"seed {seed}: {f.tag:8s} {dict(f.params)}  orbit lengths {lengths}")

#####################################################
#
# The unweighted shift makes the cyclic example easy to read:
# e_0 + e_1, e_3 + e_4, e_6 + e_7 is a single T*^3 orbit.

ones = ShiftSpec(parse_family("constant:1"), N)
x = add(e(6), e(7))
f = classify_t3(span(N, cyclic_orbit(x, ones, 3)), ones)
print("\n", f.tag, f.params)
