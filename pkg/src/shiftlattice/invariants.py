"""Invariant subspaces of powers of the backward shift.

S = T*^l lowers the top index of every vector by exactly l (weights are
positive), so the orbit of x has floor(top(x)/l) + 1 nonzero members and
ker S^j restricted to the truncation is M_{lj-1}.  The decomposition below
is the textbook Jordan-chain construction along that kernel filtration.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactlin import (
    DimensionError,
    Matrix,
    Subspace,
    Vector,
    chain_subspace,
    intersect_subspaces,
    is_direct_sum,
    is_zero,
    member,
    normalize_top,
    rank,
    rank_of,
    span,
    top_echelon_basis,
    top_index,
    vector,
    vector_to_json,
)
from .shifts import ShiftSpec, apply


class NotInvariantError(ValueError):
    pass


def _check(s: Subspace, spec: ShiftSpec):
    if s.ambient_dim != spec.N:
        raise DimensionError(f"subspace lives in dimension {s.ambient_dim}, shift acts on {spec.N}")


def is_invariant(s: Subspace, spec: ShiftSpec, power: int) -> bool:
    _check(s, spec)
    return all(member(s, apply(spec, power, b)) for b in s.basis)


def is_jointly_invariant(s: Subspace, spec: ShiftSpec, powers=(2, 3)) -> bool:
    return all(is_invariant(s, spec, p) for p in powers)


def invariant_powers(s: Subspace, spec: ShiftSpec, powers=(1, 2, 3)) -> list:
    return [p for p in powers if is_invariant(s, spec, p)]


def cyclic_orbit(x, spec: ShiftSpec, l: int) -> list:
    """[x, S x, S^2 x, ...] for S = T*^l, stopping before the first zero."""
    x = vector(x)
    if len(x) != spec.N:
        raise DimensionError(f"vector of length {len(x)} for a shift on {spec.N} coordinates")
    if is_zero(x):
        raise ValueError("orbit of the zero vector")
    if l < 1:
        raise ValueError("power must be at least 1")
    out = [x]
    while True:
        nxt = apply(spec, l, out[-1])
        if is_zero(nxt):
            return out
        out.append(nxt)


def orbit_length(x, l: int) -> int:
    return top_index(x) // l + 1


def cyclic_subspace(x, spec: ShiftSpec, l: int) -> Subspace:
    return span(spec.N, cyclic_orbit(x, spec, l))


@dataclass(frozen=True)
class CyclicDecomposition:
    l: int
    generators: tuple  # ((x, orbit_len), ...)
    spec: ShiftSpec

    @property
    def generator_count(self) -> int:
        return len(self.generators)

    @property
    def orbit_lengths(self) -> list:
        return [m for _, m in self.generators]

    @property
    def chain_bound(self) -> int:
        """Smallest k with the decomposed subspace inside M_k (-1 when empty)."""
        return max((top_index(x) for x, _ in self.generators), default=-1)

    def parts(self) -> list:
        return [cyclic_subspace(x, self.spec, self.l) for x, _ in self.generators]

    def recompose(self) -> Subspace:
        return span(self.spec.N, [v for x, _ in self.generators for v in cyclic_orbit(x, self.spec, self.l)])

    def is_sound(self, s: Subspace) -> bool:
        return is_direct_sum(self.parts()) and self.recompose() == s

    def to_json(self) -> dict:
        return {
            "l": self.l,
            "generators": [{"vector": vector_to_json(x), "orbit_len": m} for x, m in self.generators],
        }


def nilpotent_decompose(s: Subspace, spec: ShiftSpec, l: int) -> CyclicDecomposition:
    """Split a T*^l-invariant s into cyclic orbit subspaces.

    With K_j = s ∩ M_{lj-1} (the vectors S^j kills), generators of orbit
    length j are the vectors of s with top index in [l(j-1), lj-1] that are
    independent of K_{j-1} plus the images of the longer generators already
    chosen.  Candidates are scanned in decreasing top order, so generators
    come out longest first and, within one length, by decreasing top index.
    Each generator is scaled to 1 at its top.
    """
    if not is_invariant(s, spec, l):
        raise NotInvariantError(f"subspace is not invariant under T*^{l}")
    basis = top_echelon_basis(s)
    if not basis:
        return CyclicDecomposition(l, (), spec)
    h = top_index(basis[0]) // l + 1
    gens = []
    for j in range(h, 0, -1):
        lo, hi = l * (j - 1), l * j - 1
        # K_{j-1}: basis vectors with top below the band
        u = [b for b in basis if top_index(b) < lo]
        for g, length in gens:
            img = g
            for _ in range(length - j):
                img = apply(spec, l, img)
            u.append(img)
        r = rank_of(u, spec.N) if u else 0
        for b in basis:
            if lo <= top_index(b) <= hi:
                r2 = rank_of(u + [b], spec.N)
                if r2 > r:
                    u.append(b)
                    r = r2
                    gens.append((normalize_top(b), j))
    return CyclicDecomposition(l, tuple(gens), spec)


def terminal(x, spec: ShiftSpec, l: int) -> Vector:
    return cyclic_orbit(x, spec, l)[-1]


def pair_independent(x, y, spec: ShiftSpec, l: int) -> bool:
    """Is the union of the T*^l orbits of x and y linearly independent?

    Only the last nonzero members of the two orbits need checking.
    """
    return rank_of([terminal(x, spec, l), terminal(y, spec, l)], spec.N) == 2


def pair_independent_bruteforce(x, y, spec: ShiftSpec, l: int) -> bool:
    ox, oy = cyclic_orbit(x, spec, l), cyclic_orbit(y, spec, l)
    return rank_of(ox + oy, spec.N) == len(ox) + len(oy)


def rank_profile(m: Matrix) -> list:
    """[rank(m^1), ..., rank(m^N)]; raises if m is not nilpotent."""
    n = m.nrows
    if n != m.ncols:
        raise DimensionError("rank profile needs a square matrix")
    ranks = []
    p = m
    for _ in range(n):
        ranks.append(rank(p))
        p = p @ m
    # p is now m^(N+1); nilpotency is decided by m^N, i.e. a zero last rank
    if ranks[-1] != 0:
        raise ValueError("matrix is not nilpotent")
    return ranks


def unicellular_rank_test(m: Matrix) -> bool:
    """A nilpotent matrix is a single Jordan block iff rank(m^j) = N - j for all j."""
    n = m.nrows
    return rank_profile(m) == [n - j for j in range(1, n + 1)]


def containment_bound(s: Subspace, l: int) -> bool:
    """A T*^l-invariant s of dimension n lies in M_{nl-1}."""
    if s.dim == 0:
        return True
    return intersect_subspaces(s, chain_subspace(s.ambient_dim, min(s.dim * l, s.ambient_dim) - 1)) == s
