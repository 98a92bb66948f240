"""Invariant subspaces of truncated weighted shifts and their powers."""

from .classify import (
    CanonicalForm,
    classify_joint,
    classify_parity_lattice,
    classify_t2,
    classify_t3,
    construct_t2,
    construct_t3,
    materialize,
    random_invariant,
)
from .exactlin import Matrix, Subspace, kernel_basis, member, rref, span
from .invariants import (
    CyclicDecomposition,
    cyclic_orbit,
    is_invariant,
    nilpotent_decompose,
    pair_independent,
    unicellular_rank_test,
)
from .shifts import AnalyticFn, ShiftSpec, analytic_apply, apply, matrix_of, normalizer
from .weights import WeightFamily, an_partial, check_condition_34, delta_estimate, parse_family

__version__ = "0.1.0"
