from fractions import Fraction

import numpy as np
import pytest

from conftest import e, spec_of
from shiftlattice.classify import random_invariant
from shiftlattice.exactlin import Matrix, chain_subspace, span, unit, vector, zero_subspace
from shiftlattice.invariants import (
    NotInvariantError,
    containment_bound,
    cyclic_orbit,
    invariant_powers,
    is_invariant,
    is_jointly_invariant,
    nilpotent_decompose,
    pair_independent,
    pair_independent_bruteforce,
    rank_profile,
    unicellular_rank_test,
)
from shiftlattice.shifts import matrix_of


def test_invariance_examples():
    spec = spec_of("alternating38", 6)
    assert all(is_invariant(zero_subspace(6), spec, p) for p in (1, 2, 3))
    assert is_invariant(span(6, [e(6, 0), e(6, 1), e(6, 3)]), spec, 2)
    assert not is_invariant(span(6, [e(6, 0), e(6, 1), e(6, 3)]), spec, 1)
    assert is_invariant(span(6, [e(6, 0), e(6, 2)]), spec, 3)
    assert invariant_powers(span(6, [e(6, 0), e(6, 2)]), spec) == [2, 3]
    assert is_jointly_invariant(span(6, [vector([1, 1, 0, 0, 0, 0])]), spec)


def test_orbit_examples():
    spec = spec_of("harmonic:1", 8)
    w = spec.weights
    assert cyclic_orbit(e(8, 0), spec, 3) == [e(8, 0)]
    orb = cyclic_orbit(e(8, 5), spec, 2)
    assert orb == [
        e(8, 5),
        tuple(w(4) * w(3) if i == 3 else 0 for i in range(8)),
        tuple(w(4) * w(3) * w(2) * w(1) if i == 1 else 0 for i in range(8)),
    ]
    with pytest.raises(ValueError):
        cyclic_orbit(vector([0] * 8), spec, 2)


def test_decompose_examples():
    spec = spec_of("donoghue", 8)
    dec = nilpotent_decompose(chain_subspace(8, 4), spec, 1)
    assert dec.generators == ((e(8, 4), 5),)
    dec = nilpotent_decompose(span(8, [e(8, 0), e(8, 1), e(8, 3)]), spec, 2)
    assert dec.generators == ((e(8, 3), 2), (e(8, 0), 1))
    dec = nilpotent_decompose(span(8, [e(8, 0), e(8, 1)]), spec, 2)
    assert dec.orbit_lengths == [1, 1]
    with pytest.raises(NotInvariantError):
        nilpotent_decompose(span(8, [e(8, 3)]), spec, 2)


def test_decomposition_soundness_on_random_subspaces():
    for name in ("donoghue", "alternating38", "geometric:3/4"):
        for seed in range(40):
            rng = np.random.default_rng(seed)
            N = int(rng.integers(4, 16))
            l = int(rng.integers(1, 4))
            d = int(rng.integers(0, N + 1))
            spec = spec_of(name, N)
            s = random_invariant(spec, l, d, seed)
            assert s.dim == d and is_invariant(s, spec, l)
            dec = nilpotent_decompose(s, spec, l)
            assert dec.generator_count <= l
            assert dec.is_sound(s)
            assert sum(dec.orbit_lengths) == d
            assert containment_bound(s, l)


def test_pair_independence_examples():
    spec = spec_of("alternating38", 6)
    assert pair_independent(e(6, 4), e(6, 5), spec, 2)
    assert pair_independent_bruteforce(e(6, 4), e(6, 5), spec, 2)
    two = tuple(2 * c for c in e(6, 4))
    assert not pair_independent(e(6, 4), two, spec, 2)
    assert not pair_independent_bruteforce(e(6, 4), two, spec, 2)


def test_rank_test_examples():
    for name in ("constant:1", "donoghue", "alternating38"):
        assert unicellular_rank_test(matrix_of(spec_of(name, 8), 1))
    j = matrix_of(spec_of("constant:1", 8), 1)
    assert not unicellular_rank_test(j @ j)
    assert rank_profile(j @ j)[0] == 6
    blocks = Matrix.from_rows([[1 if (r, c) in {(0, 1), (2, 3)} else 0 for c in range(4)] for r in range(4)])
    assert not unicellular_rank_test(blocks)
    with pytest.raises(ValueError):
        rank_profile(Matrix.identity(3))


def test_rank_profile_is_nilpotent_ranks():
    j = matrix_of(spec_of("harmonic:1/2", 6), 1)
    assert rank_profile(j) == [5, 4, 3, 2, 1, 0]
    assert rank_profile(j @ j) == [4, 2, 0, 0, 0, 0]
    assert rank_profile(Matrix.zeros(3, 3)) == [0, 0, 0]
