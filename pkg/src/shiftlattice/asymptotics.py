"""Floating-point checks of the convergence bounds behind the infinite-dimensional results.

Everything here is done at a finite truncation: x has N coordinates and the
reports carry N.  Products of weights are formed from log prefix sums so that
families like 2^-n do not underflow long before the quotients are taken.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import asdict, dataclass

import numpy as np

from ._summation import compensated_sum
from .exactlin import span, vector
from .invariants import rank_profile
from .shifts import AnalyticFn, ShiftSpec, analytic_apply, matrix_of
from .weights import WeightFamily, delta_estimate, log_weights

EPS = 1e-9


@dataclass(frozen=True)
class ResidualReport:
    N: int
    n: int
    residual: float
    bound: float
    C: float
    w_n: float
    passed: bool
    K: int | None = None
    tail_bound: float | None = None

    def csv_row(self) -> list:
        return [self.n] + [repr(float(v)) for v in (self.residual, self.bound, self.C, self.w_n)] + [int(self.passed)]


CSV_COLUMNS = ["n", "residual", "bound", "C", "w_n", "pass"]


def reports_to_csv(reports, out=None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in reports:
        w.writerow(r.csv_row())
    text = buf.getvalue()
    if out is not None:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    return text


def _floats(x) -> np.ndarray:
    return np.array([float(v) for v in x], dtype=float)


def _cum_logs(f: WeightFamily, count: int) -> np.ndarray:
    logw = log_weights(f, count)
    if np.isnan(logw).any():
        raise ValueError(f"{f.name()} weights are undefined below index {f.start}")
    return np.concatenate([[0.0], np.cumsum(logw)])


def _sup_weight(f: WeightFamily, count: int) -> float:
    return float(np.exp(np.max(log_weights(f, count))))


# ---------------------------------------------------------------------------
# forward shift: ||T^n x / (x_0 w_0...w_{n-1}) - e_n||^2 <= C w_n^2


def thm36_constant(f: WeightFamily, x, delta: float, mu: float) -> float:
    """C = delta mu^2 ||x||^2 / (x_0^2 w_0^2 w_1^2)."""
    xs = _floats(x)
    w0, w1 = float(f.eval(0)), float(f.eval(1))
    return delta * mu**2 * compensated_sum(xs**2) / (xs[0] ** 2 * w0**2 * w1**2)


def _delta_for(f: WeightFamily, N: int, n_max: int) -> float:
    # the bound for step n uses the (m = 2, n) cell over k < N
    return delta_estimate(f, K=max(N, 2), M_max=max(n_max, 2), cap=math.inf).lower_bound


def thm36_residual(
    f: WeightFamily,
    x,
    n: int,
    N: int,
    delta: float | None = None,
    mu: float | None = None,
    eps: float = EPS,
) -> ResidualReport:
    """Residual of the n-th normalized orbit vector against e_n, and its bound.

    ``x`` holds x_0..x_{N-1} (shorter inputs are zero-padded).  Since x is
    finitely supported, T^n x is computed exactly in the untruncated space.
    """
    xs = _floats(x)
    if len(xs) > N:
        raise ValueError(f"x has {len(xs)} coordinates, truncation is {N}")
    xs = np.concatenate([xs, np.zeros(N - len(xs))])
    if xs[0] == 0:
        raise ValueError("x_0 must be nonzero")
    if n < 0:
        raise ValueError("n must be nonnegative")
    cum = _cum_logs(f, N + n + 1)
    k = np.arange(1, N)
    # log (w_k ... w_{k+n-1} / w_0 ... w_{n-1})
    logratio = (cum[k + n] - cum[k]) - cum[n]
    terms = np.exp(2.0 * logratio) * (xs[1:] / xs[0]) ** 2
    residual = compensated_sum(terms)
    if delta is None:
        delta = _delta_for(f, N, n)
    if mu is None:
        mu = _sup_weight(f, N + n + 1)
    C = thm36_constant(f, xs, delta, mu)
    w_n = float(f.eval(n))
    bound = C * w_n**2
    return ResidualReport(N, n, residual, bound, C, w_n, residual <= bound * (1 + eps))


def thm36_sweep(f: WeightFamily, x, n_max: int, N: int, delta: float | None = None, eps: float = EPS) -> list:
    """Reports for n = 0..n_max sharing one delta and one mu."""
    if delta is None:
        delta = _delta_for(f, N, n_max)
    mu = _sup_weight(f, N + n_max + 1)
    return [thm36_residual(f, x, n, N, delta, mu, eps) for n in range(n_max + 1)]


def closeness_partials(reports) -> list:
    """Running sums of residuals, i.e. quadratic-closeness partial sums."""
    out, acc = [], []
    for r in reports:
        acc.append(r.residual)
        out.append(compensated_sum(acc))
    return out


def closeness_status(partials, rel_tol: float = 1e-6) -> str:
    """'stabilizing' if the last increment is negligible next to the total, else 'growing'."""
    if len(partials) < 2:
        return "stabilizing"
    last = partials[-1] - partials[-2]
    return "stabilizing" if last <= rel_tol * max(1.0, abs(partials[-1])) else "growing"


def quadratic_closeness(seq_a, seq_b) -> float:
    """sum_n ||a_n - b_n||^2 over the supplied prefix."""
    if len(seq_a) != len(seq_b):
        raise ValueError("sequences have different lengths")
    total = []
    for a, b in zip(seq_a, seq_b):
        a, b = _floats(a), _floats(b)
        if a.shape != b.shape:
            raise ValueError("vectors have different dimensions")
        total.append(compensated_sum((a - b) ** 2))
    return compensated_sum(total)


def normalized_orbit(f: WeightFamily, x, n_max: int, N: int) -> list:
    """T^n x / (x_0 w_0 ... w_{n-1}) for n = 0..n_max, on N + n_max coordinates."""
    xs = _floats(x)
    size = N + n_max
    cum = _cum_logs(f, size + 1)
    out = []
    for n in range(n_max + 1):
        v = np.zeros(size)
        k = np.arange(len(xs))
        v[k + n] = xs * np.exp((cum[k + n] - cum[k]) - cum[n]) / xs[0]
        out.append(v)
    return out


def unit_sequence(n_max: int, size: int) -> list:
    return [np.eye(1, size, n).ravel() for n in range(n_max + 1)]


# ---------------------------------------------------------------------------
# backward shift squared: extraction of e_tau from T*^{2K} x


def _targets(case: str, size: int) -> range:
    if case == "even":
        return range(0, size, 2)
    if case == "odd":
        return range(1, size, 2)
    if case == "mixed":
        return range(0, size)
    raise ValueError(f"case must be even, odd or mixed, not {case!r}")


def _check_support(xs: np.ndarray, case: str):
    nz = np.nonzero(xs)[0]
    if len(nz) == 0:
        raise ValueError("all coefficients are zero")
    if case == "even" and (nz % 2 == 1).any():
        raise ValueError("x has odd-index coefficients but case is even")
    if case == "odd" and (nz % 2 == 0).any():
        raise ValueError("x has even-index coefficients but case is odd")


def tail_index(f: WeightFamily, eps: float, limit: int) -> int:
    """Smallest J with sum_{m >= 2J-1} w_m^2 < eps, scanning weights below ``limit``."""
    w2 = np.exp(2.0 * log_weights(f, limit))
    w2 = np.nan_to_num(w2, nan=0.0)
    tails = np.cumsum(w2[::-1])[::-1]  # tails[m] = sum_{i >= m} w_i^2 (within the scan)
    for J in range(0, limit // 2):
        if tails[max(2 * J - 1, 0)] < eps:
            return J
    raise ValueError(f"weight tail never drops below {eps} within {limit} terms")


def sup_rule_K(xs: np.ndarray, tau: int, J: int, step: int) -> int | None:
    """First K >= J whose coefficient x_{tau+2K} dominates every later one the residual sums over.

    For the parity cases this is the K >= J maximizing |x_{tau+2K}|.
    Returns None when no such coefficient is nonzero.
    """
    for K in range(J, (len(xs) - 1 - tau) // 2 + 1):
        c = abs(xs[tau + 2 * K])
        if c == 0:
            continue
        beyond = np.abs(xs[tau + 2 * K + step:: step])
        if beyond.size == 0 or beyond.max() <= c:
            return K
    return None


def thm39_residual(
    f: WeightFamily,
    x,
    case: str,
    K: int | None,
    N: int,
    eps: float = 1e-6,
    weight_class: str = "delta",
    delta: float | None = None,
    rel: float = EPS,
) -> list:
    """Residuals ||y_tau / (x_{tau+2K} w_tau ... w_{tau+2K-1}) - e_tau||^2 along the extraction.

    y_tau is T*^{2K} x with the already-recovered e_sigma (sigma < tau)
    removed.  Targets run over even tau, odd tau, or every tau depending on
    ``case``.  With K = None each target gets the sup-rule K: the first J with
    weight tail below ``eps``, then the K >= J with the largest coefficient.

    ``weight_class`` picks the bound: "delta" uses
    mu^2 delta / (w_tau^2 w_{tau+1}^2) * sum w_{i-1}^2 |x_i / x_{tau+2K}|^2,
    "monotone" uses sum |x_i / x_{tau+2K}|^2 (w_{i-1} / w_tau)^2.
    """
    xs = _floats(x)
    if len(xs) > N:
        raise ValueError(f"x has {len(xs)} coordinates, truncation is {N}")
    xs = np.concatenate([xs, np.zeros(N - len(xs))])
    _check_support(xs, case)
    step = 1 if case == "mixed" else 2
    cum = _cum_logs(f, N + 2)
    logw = log_weights(f, N + 2)
    J = tail_index(f, eps, max(4 * N, 64)) if K is None else None
    mu = _sup_weight(f, N + 2)

    plan = []
    for tau in _targets(case, N):
        k = sup_rule_K(xs, tau, J, step) if K is None else K
        if k is None or tau + 2 * k >= N or xs[tau + 2 * k] == 0:
            if K is None:
                # a short x runs out of coefficients beyond J: fall back to its last one
                top = max((i for i in range(tau, N, 2) if xs[i] != 0), default=None)
                if top is None:
                    continue
                k = (top - tau) // 2
            else:
                continue
        plan.append((tau, k))
    if not plan:
        raise ValueError("no extraction target has a nonzero coefficient")

    if weight_class == "delta" and delta is None:
        m_max = max(tau + 2 * k for tau, k in plan) + 2
        delta = delta_estimate(f, K=max(N, 2), M_max=max(m_max, 2), cap=math.inf).lower_bound

    reports = []
    for tau, k in plan:
        top = tau + 2 * k
        idx = np.arange(top + step, N, step)
        # log(w_{i-2K} ... w_{i-1}) - log(w_tau ... w_{tau+2K-1})
        logratio = (cum[idx] - cum[idx - 2 * k]) - (cum[top] - cum[tau])
        ratio2 = (xs[idx] / xs[top]) ** 2
        residual = compensated_sum(np.exp(2.0 * logratio) * ratio2)
        wprev2 = np.exp(2.0 * logw[idx - 1])
        if weight_class == "delta":
            C = mu**2 * delta / math.exp(2.0 * (logw[tau] + logw[tau + 1]))
            bound = C * compensated_sum(wprev2 * ratio2)
            tail = C * eps
        elif weight_class == "monotone":
            C = math.exp(-2.0 * logw[tau])
            bound = C * compensated_sum(wprev2 * ratio2)
            tail = eps * C
        else:
            raise ValueError("weight_class must be 'delta' or 'monotone'")
        w_tau = math.exp(logw[tau])
        reports.append(ResidualReport(N, tau, residual, bound, C, w_tau, residual <= bound * (1 + rel), k, tail))
    return reports


# ---------------------------------------------------------------------------
# analytic functions of the nilpotent shift


@dataclass(frozen=True)
class Cor44Result:
    unicellular: bool
    hypothesis_met: bool
    rank_profile: tuple
    N: int

    def to_json(self) -> dict:
        d = asdict(self)
        d["rank_profile"] = list(self.rank_profile)
        return d


def cor44_check(f: AnalyticFn, spec: ShiftSpec) -> Cor44Result:
    """Is f(S) - f(0) I a single Jordan block?  Exact at dimension N.

    Adding a scalar does not change the invariant subspaces, so the constant
    term is dropped first.  ``hypothesis_met`` records whether f'(0) != 0.
    """
    m = analytic_apply(f.without_constant(), spec)
    profile = tuple(rank_profile(m))
    n = spec.N
    return Cor44Result(profile == tuple(n - j for j in range(1, n + 1)), f.coeff(1) != 0, profile, n)


def forward_orbit_spans(x, spec: ShiftSpec) -> bool:
    """At truncation, do x, Tx, T^2x, ... span everything?  True iff x_0 != 0."""
    t = matrix_of(spec.with_direction("forward"), 1)
    v = vector(x)
    vs = []
    for _ in range(spec.N):
        vs.append(v)
        v = t.apply(v)
    return span(spec.N, vs).dim == spec.N
