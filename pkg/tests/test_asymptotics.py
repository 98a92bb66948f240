import math
from fractions import Fraction

import numpy as np
import pytest

from conftest import spec_of
from shiftlattice.asymptotics import (
    CSV_COLUMNS,
    closeness_partials,
    closeness_status,
    cor44_check,
    forward_orbit_spans,
    normalized_orbit,
    quadratic_closeness,
    reports_to_csv,
    sup_rule_K,
    tail_index,
    thm36_residual,
    thm36_sweep,
    thm39_residual,
)
from shiftlattice.exactlin import unit
from shiftlattice.shifts import AnalyticFn, ShiftSpec, apply, power_weighted_poly, z_times_one_plus_z
from shiftlattice.weights import parse_family


def exact_forward_residual(f, x, n):
    """||T^n x / (x_0 w_0...w_{n-1}) - e_n||^2 with Fractions on a big enough truncation."""
    size = len(x) + n + 1
    spec = ShiftSpec(f, size, "forward")
    v = tuple(list(x) + [0] * (n + 1))
    v = apply(spec, n, v)
    norm = x[0]
    for i in range(n):
        norm *= f(i)
    return sum((c / norm) ** 2 for i, c in enumerate(v) if i != n)


def test_forward_residual_matches_exact_oracle():
    rng = np.random.default_rng(5)
    for name in ("alternating38", "donoghue", "harmonic:1", "geometric:3/5"):
        f = parse_family(name)
        for _ in range(5):
            x = [Fraction(int(a), int(b)) for a, b in zip(rng.integers(-5, 6, 10), rng.integers(1, 4, 10))]
            x[0] = x[0] or Fraction(1)
            for n in range(0, 8):
                got = thm36_residual(f, [float(c) for c in x], n, 10).residual
                want = float(exact_forward_residual(f, x, n))
                assert math.isclose(got, want, rel_tol=1e-12, abs_tol=1e-300)


def test_forward_residual_examples():
    f = parse_family("alternating38")
    for r in thm36_sweep(f, [1.0], 30, 128):
        assert r.residual == 0
    reps = thm36_sweep(f, [1.0, 1.0], 30, 128)
    assert all(r.residual <= r.bound * (1 + 1e-9) for r in reps)
    with pytest.raises(ValueError):
        thm36_residual(f, [0.0, 1.0], 2, 8)


def test_closeness_examples():
    seq = [np.arange(4.0), np.ones(4)]
    assert quadratic_closeness(seq, seq) == 0
    f = parse_family("donoghue")
    x = [1.0, 0.5, -0.25]
    orbit = normalized_orbit(f, x, 40, 8)
    units = [np.eye(1, 48, n).ravel() for n in range(41)]
    q = quadratic_closeness(orbit, units)
    reps = thm36_sweep(f, x, 40, 8)
    partials = closeness_partials(reps)
    assert math.isclose(q, partials[-1], rel_tol=1e-12)
    increments = np.diff(partials)
    assert (increments[1:] <= increments[:-1] * (1 + 1e-12)).all()
    assert closeness_status(partials) == "stabilizing"
    flat = thm36_sweep(parse_family("constant:1"), [1.0, 1.0, 1.0], 40, 8)
    assert closeness_status(closeness_partials(flat)) == "growing"


def exact_extraction_residual(f, x, tau, K, N):
    spec = ShiftSpec(f, N)
    y = apply(spec, 2 * K, tuple(x))
    norm = x[tau + 2 * K]
    for i in range(tau, tau + 2 * K):
        norm *= f(i)
    return sum((c / norm) ** 2 for i, c in enumerate(y) if i > tau)


def test_extraction_residual_matches_exact_oracle():
    N = 24
    f = parse_family("alternating38")
    for case, idx in (("even", range(0, N, 2)), ("odd", range(1, N, 2)), ("mixed", range(N))):
        x = [Fraction(0)] * N
        for i, k in enumerate(idx):
            x[k] = Fraction(1, 2**i)
        for K in (1, 2, 3):
            reps = thm39_residual(f, [float(c) for c in x], case, K, N)
            for r in reps:
                want = float(exact_extraction_residual(f, x, r.n, K, N))
                assert math.isclose(r.residual, want, rel_tol=1e-10, abs_tol=1e-300)
                assert r.passed


def test_extraction_examples():
    f = parse_family("alternating38")
    reps = thm39_residual(f, [1.0], "even", None, 8)
    assert len(reps) == 1 and reps[0].residual == 0 and reps[0].n == 0
    x = [0.0] * 64
    for i in range(21):
        x[2 * i] = 2.0**-i
    for r in thm39_residual(f, x, "even", None, 64, eps=1e-6):
        assert r.passed and r.residual < r.tail_bound
    d = thm39_residual(parse_family("donoghue"), x, "even", None, 64, weight_class="monotone")
    assert all(r.passed for r in d)
    with pytest.raises(ValueError):
        thm39_residual(f, [1.0, 1.0], "even", None, 8)


def test_sup_rule_and_tail_index():
    xs = np.array([0, 0, 3, 0, 1, 0, 2, 0, 0.5])
    assert sup_rule_K(xs, 0, 1, 2) == 1
    assert sup_rule_K(xs, 0, 2, 2) == 3
    f = parse_family("donoghue")
    J = tail_index(f, 1e-6, 100)
    tail = lambda m: sum(4.0**-i for i in range(m, 200))
    assert tail(max(2 * J - 1, 0)) < 1e-6 <= tail(max(2 * J - 3, 0))


def test_analytic_function_examples():
    ones = lambda n: spec_of("constant:1", n)
    r = cor44_check(z_times_one_plus_z(3), ones(8))
    assert r.hypothesis_met and r.unicellular
    r = cor44_check(AnalyticFn((0, 0, 1)), ones(8))
    assert not r.hypothesis_met and not r.unicellular and r.rank_profile[0] == 6
    r = cor44_check(power_weighted_poly(4, 2), ones(16))
    assert r.hypothesis_met and r.unicellular
    # a constant term does not matter
    assert cor44_check(AnalyticFn((7, 1, 1)), spec_of("donoghue", 8)).unicellular


def test_forward_orbit_spans():
    spec = spec_of("donoghue", 6)
    assert forward_orbit_spans(unit(6, 0), spec)
    assert not forward_orbit_spans(unit(6, 1), spec)


def test_csv_output(tmp_path):
    reps = thm36_sweep(parse_family("donoghue"), [1.0, 0.5], 3, 8)
    text = reports_to_csv(reps)
    lines = text.strip().splitlines()
    assert lines[0].split(",") == list(CSV_COLUMNS)
    assert len(lines) == 5 and "np.float64" not in text


@pytest.mark.parametrize("family,weight_class", [("alternating38", "delta"), ("donoghue", "monotone"), ("donoghue", "delta")])
def test_extraction_suite(family, weight_class):
    from shiftlattice.verify import run_thm39

    rep = run_thm39(parse_family(family), N=64, weight_class=weight_class)
    assert rep["failed"] == 0 and rep["cases"] > 0
