import json
import math
from fractions import Fraction

import numpy as np
import pytest
from scipy.special import polygamma

from shiftlattice.weights import (
    WeightFamily,
    an_integral_bound,
    an_partial,
    bounded_variation_partial,
    check_condition_34,
    delta_estimate,
    float_weights,
    parse_family,
    weight,
)


def test_eval_examples():
    assert weight(parse_family("donoghue"), 3) == Fraction(1, 8)
    alt = parse_family("alternating38")
    assert alt(2) == Fraction(1, 8) and alt(3) == Fraction(1, 4)
    assert alt(0) == Fraction(1, 2) and alt(1) == 1
    c = parse_family("constant:5/3")
    assert all(c(n) == Fraction(5, 3) for n in (0, 7, 1000))


def test_harmonic_index_rules():
    h = parse_family("harmonic")
    assert h(4) == Fraction(1, 4)
    with pytest.raises(IndexError):
        h(0)
    assert parse_family("harmonic:1")(0) == 1


def test_family_validation():
    with pytest.raises(ValueError):
        WeightFamily("geometric", (Fraction(3, 2),))
    with pytest.raises(ValueError):
        WeightFamily("constant", (0,))
    with pytest.raises(ValueError):
        WeightFamily("custom", (1, -1))
    with pytest.raises(ValueError):
        parse_family("mystery")
    with pytest.raises(IndexError):
        WeightFamily("custom", (1, 2))(5)


def test_custom_family_from_file(tmp_path):
    p = tmp_path / "w.json"
    p.write_text(json.dumps(["1/2", "1", "1/3"]))
    f = parse_family(f"custom:@{p}")
    assert f.prefix(3) == [Fraction(1, 2), 1, Fraction(1, 3)]
    assert WeightFamily.from_json(f.to_json()) == f


def test_monotone_l2_examples():
    assert check_condition_34(parse_family("donoghue"), 10_000).holds
    assert check_condition_34(parse_family("harmonic:1"), 10_000).holds
    r = check_condition_34(parse_family("alternating38"), 10_000)
    assert not r.holds and r.witness == 1
    assert not check_condition_34(parse_family("constant:1"), 10_000).holds


def test_bounded_variation_telescopes():
    assert bounded_variation_partial(parse_family("constant:2"), 50) == 0
    d = bounded_variation_partial(parse_family("donoghue"), 20)
    assert abs(d - (1 - 2.0**-20)) < 1e-15 and abs(d - 1) < 1e-5
    h = bounded_variation_partial(parse_family("harmonic"), 1000)
    assert h < 1 and abs(h - (1 - 1 / 1001)) < 1e-12


def test_an_partial_matches_trigamma():
    # a_n partial over k = 0..K is sum ((n+1)/(k+n+1))^2 ... compare with the
    # closed form (n+1)^2 (psi_1(n+1) - psi_1(n+K+2)) - 1 with the k = 0 term removed
    for n in (1, 2, 7, 30, 50):
        for K in (10, 1000, 10**6):
            got = an_partial(n, K)
            want = _trigamma_oracle(n, K)
            assert math.isclose(got, want, rel_tol=1e-11), (n, K, got, want)
    assert abs(an_partial(1, 10**6) - 0.644933) < 1e-6
    assert abs(an_partial(1, 10**6) - (math.pi**2 / 6 - 1)) < 2e-6


def _trigamma_oracle(n, K):
    # an_partial(n, K) = sum_{k=1}^{K} (n / (n + k))^2
    return n * n * float(polygamma(1, n + 1) - polygamma(1, n + K + 1))


def test_an_dominates_integral_bound():
    for n in range(1, 51):
        assert an_partial(n, 10**6) >= an_integral_bound(n)


def _exact_cell(f, m, n, K):
    base = Fraction(1)
    for i in range(m, n + 1):
        base *= f(i)
    total = Fraction(0)
    for k in range(K + 1):
        num = Fraction(1)
        for i in range(m + k, n + k + 1):
            num *= f(i)
        total += (num / base) ** 2
    return total


def test_delta_witness_matches_exact_cell():
    f = parse_family("alternating38")
    est = delta_estimate(f, 60, 12, 1e3)
    m, n = est.witness
    exact = _exact_cell(f, m, n, 60)
    assert math.isclose(est.lower_bound, float(exact), rel_tol=1e-12)


def test_delta_grid_is_max_of_exact_cells():
    f = parse_family("geometric:2/3")
    K, M = 25, 6
    est = delta_estimate(f, K, M, 1e6)
    best = max(float(_exact_cell(f, m, n, K)) for m in range(2, M + 1) for n in range(m, M + 1))
    assert math.isclose(est.lower_bound, best, rel_tol=1e-12)


def test_delta_examples():
    alt = delta_estimate(parse_family("alternating38"), 200, 50, 1e3)
    assert alt.status == "bounded_evidence" and alt.lower_bound <= 17 + Fraction(15, 16)
    c = delta_estimate(parse_family("constant:1"), 100, 5, 50)
    assert c.status == "certified_divergent" and c.lower_bound >= 101 - 1e-9
    h = delta_estimate(parse_family("harmonic:1"), 10_000, 1500, 1e3, diagonal_only=True)
    assert h.status == "certified_divergent" and h.lower_bound > 1e3
    assert h.witness[0] == h.witness[1]


def test_float_weights_agree_with_exact():
    f = parse_family("alternating38")
    ws = float_weights(f, 40)
    assert np.allclose(ws, [float(f(i)) for i in range(40)], rtol=1e-14, atol=0)
