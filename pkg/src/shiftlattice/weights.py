"""Weight sequences and the two weight-class tests.

Two classes of weights matter here:

* the delta-supremum class: ``sup_{m>=2, n} sum_k (w_{k+m}...w_{k+n} / w_m...w_n)^2 < inf``;
* the monotone square-summable class: ``w_{n+1} <= w_n`` and ``sum w_n^2 < inf``.

Neither can be certified from finitely many weights, so the functions in this
module report evidence: certified lower bounds, first violations, and
stabilisation of partial sums.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from ._summation import compensated_sum
from .exactlin import as_scalar, scalar_to_str

FAMILIES = ("donoghue", "geometric", "harmonic", "alternating38", "constant", "custom")


@dataclass(frozen=True)
class WeightFamily:
    """A rule n -> w_n with exact rational values.

    ``params`` depends on ``kind``:

    - donoghue: ()                      w_n = 2^-n
    - geometric: (r,)                   w_n = r^n, 0 < r <= 1
    - harmonic: () or (w0,)             w_n = 1/n for n >= 1
    - alternating38: ()                 w_n = 2^-(n+1) for even n, 2^-(n-1) for odd n
    - constant: (c,)                    w_n = c
    - custom: (w_0, w_1, ...)           finite list
    """

    kind: str
    params: tuple = field(default=())

    def __post_init__(self):
        if self.kind not in FAMILIES:
            raise ValueError(f"unknown weight family {self.kind!r}")
        params = tuple(as_scalar(p) for p in self.params)
        object.__setattr__(self, "params", params)
        if self.kind == "geometric":
            if len(params) != 1 or not 0 < params[0] <= 1:
                raise ValueError("geometric weights need one ratio r with 0 < r <= 1")
        elif self.kind == "constant":
            if len(params) != 1 or params[0] <= 0:
                raise ValueError("constant weights need one positive value")
        elif self.kind == "harmonic":
            if len(params) > 1 or (params and params[0] <= 0):
                raise ValueError("harmonic weights take at most one positive w0 override")
        elif self.kind == "custom":
            if not params or any(p <= 0 for p in params):
                raise ValueError("custom weights must be a nonempty list of positive rationals")
        elif params:
            raise ValueError(f"{self.kind} weights take no parameters")

    @property
    def start(self) -> int:
        """First index at which the family is defined."""
        return 1 if self.kind == "harmonic" and not self.params else 0

    @property
    def length(self) -> int | None:
        """Number of defined weights for finite families, else None."""
        return len(self.params) if self.kind == "custom" else None

    def eval(self, n: int) -> Fraction:
        if n < 0:
            raise IndexError("weight index must be nonnegative")
        k = self.kind
        if k == "donoghue":
            return Fraction(1, 2**n)
        if k == "geometric":
            return self.params[0] ** n
        if k == "harmonic":
            if n == 0:
                if not self.params:
                    raise IndexError("harmonic weights start at n = 1; pass w0 to define w_0")
                return self.params[0]
            return Fraction(1, n)
        if k == "alternating38":
            return Fraction(1, 2 ** (n + 1)) if n % 2 == 0 else Fraction(1, 2 ** (n - 1))
        if k == "constant":
            return self.params[0]
        if n >= len(self.params):
            raise IndexError(f"custom weight list has {len(self.params)} entries, asked for w_{n}")
        return self.params[n]

    __call__ = eval

    def prefix(self, count: int, start: int | None = None) -> list:
        s = self.start if start is None else start
        return [self.eval(n) for n in range(s, s + count)]

    def name(self) -> str:
        if self.kind in ("donoghue", "alternating38") or (self.kind == "harmonic" and not self.params):
            return self.kind
        if self.kind == "custom":
            return "custom"
        return f"{self.kind}:{scalar_to_str(self.params[0])}"

    def to_json(self) -> dict:
        return {"family": self.kind, "params": [scalar_to_str(p) for p in self.params]}

    @classmethod
    def from_json(cls, data: dict) -> "WeightFamily":
        return cls(data["family"], tuple(data.get("params", ())))


def weight(f: WeightFamily, n: int) -> Fraction:
    return f.eval(n)


def parse_family(text: str) -> WeightFamily:
    """Parse ``donoghue``, ``geometric:r``, ``harmonic[:w0]``, ``alternating38``,
    ``constant:c`` or ``custom:@file.json`` (a JSON list of rational strings)."""
    text = text.strip()
    if text.startswith("family="):
        text = text[len("family="):]
    kind, _, arg = text.partition(":")
    if kind == "custom":
        if not arg.startswith("@"):
            raise ValueError("custom weights are given as custom:@file.json")
        try:
            values = json.loads(Path(arg[1:]).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ValueError(f"cannot read custom weights from {arg[1:]}: {exc}") from exc
        if not isinstance(values, list):
            raise ValueError("custom weight file must hold a JSON list")
        return WeightFamily("custom", tuple(str(v) for v in values))
    if kind not in FAMILIES:
        raise ValueError(f"unknown weight family {kind!r}")
    return WeightFamily(kind, (arg,) if arg else ())


def log_weights(f: WeightFamily, count: int) -> np.ndarray:
    """Natural logs of w_0..w_{count-1}; NaN where the family is undefined."""
    out = np.full(count, np.nan)
    stop = count if f.length is None else min(count, f.length)
    for n in range(f.start, stop):
        w = f.eval(n)
        out[n] = math.log(w.numerator) - math.log(w.denominator)
    return out


def float_weights(f: WeightFamily, count: int) -> np.ndarray:
    return np.exp(log_weights(f, count))


# ---------------------------------------------------------------------------
# monotone + square-summable class


@dataclass(frozen=True)
class Condition34Result:
    holds: bool
    witness: int | None
    partial_sum: float
    tail_estimate: float
    prefix: int
    reason: str

    def to_json(self) -> dict:
        return {
            "holds_on_prefix": self.holds,
            "witness": self.witness,
            "partial_sum_w2": self.partial_sum,
            "tail_estimate": self.tail_estimate,
            "prefix": self.prefix,
            "reason": self.reason,
        }


def check_condition_34(f: WeightFamily, prefix: int, tail_budget: float = 1e6) -> Condition34Result:
    """Check monotone decrease and square-summability on w_start..w_prefix.

    Monotonicity is checked exactly; the witness is the first n with
    w_n > w_{n-1}.  For square-summability the partial sum of w_n^2 must stay
    under ``tail_budget`` and the Cauchy-condensed terms 2^k w_{2^k}^2 (whose
    series converges iff sum w_n^2 does, for monotone w) must be decaying at
    the end of the prefix; their geometric decay rate gives the tail estimate.
    """
    if prefix < 2:
        raise ValueError("prefix must be at least 2")
    s = f.start
    stop = prefix + 1 if f.length is None else min(prefix + 1, f.length)
    ws = [f.eval(n) for n in range(s, stop)]
    for i in range(1, len(ws)):
        if ws[i] > ws[i - 1]:
            return Condition34Result(False, s + i, math.nan, math.nan, prefix, "not monotone non-increasing")

    sq = np.array([float(w) ** 2 for w in ws])
    partial = compensated_sum(sq)

    condensed = []
    k = 0
    while (1 << k) < s:
        k += 1
    while (1 << k) <= stop - 1:
        idx = 1 << k
        condensed.append(idx * float(ws[idx - s]) ** 2)
        k += 1
    tail = math.inf
    if len(condensed) >= 2 and condensed[-2] > 0:
        rho = condensed[-1] / condensed[-2]
        if rho < 1:
            tail = condensed[-1] * rho / (1 - rho)
    elif len(condensed) >= 2:
        tail = 0.0
    if not math.isfinite(tail):
        return Condition34Result(False, None, partial, tail, prefix, "condensed squares not decaying (no l2 evidence)")
    if partial + tail > tail_budget:
        return Condition34Result(False, None, partial, tail, prefix, "sum of squares exceeds budget")
    return Condition34Result(True, None, partial, tail, prefix, "monotone on prefix with decaying square tail")


# ---------------------------------------------------------------------------
# bounded variation


def bounded_variation_partial(f: WeightFamily, K: int) -> float:
    """sum_{n=s}^{s+K-1} |w_n - w_{n+1}| where s is the family's first index."""
    if K < 1:
        raise ValueError("K must be at least 1")
    s = f.start
    terms = [float(abs(f.eval(n) - f.eval(n + 1))) for n in range(s, s + K)]
    return compensated_sum(terms)


def bounded_variation_report(f: WeightFamily, K: int) -> dict:
    value = bounded_variation_partial(f, K)
    s = f.start
    ws = [f.eval(n) for n in range(s, s + K + 1)]
    monotone = all(ws[i + 1] <= ws[i] for i in range(K))
    report = {"K": K, "partial_sum": value, "monotone_prefix": monotone}
    if monotone:
        # telescoping: the full series equals w_s - lim w_n, so the tail is at most w_{s+K}
        report["tail_at_most"] = float(ws[-1])
    return report


# ---------------------------------------------------------------------------
# delta supremum


@dataclass(frozen=True)
class DeltaEstimate:
    lower_bound: float
    status: str  # bounded_evidence | certified_divergent | inconclusive
    K: int
    M_max: int
    witness: tuple
    last_increment: float
    cap: float
    eps: float
    cells: int

    def to_json(self) -> dict:
        return {
            "lower_bound": self.lower_bound,
            "status": self.status,
            "K": self.K,
            "M_max": self.M_max,
            "witness": list(self.witness),
            "last_increment": self.last_increment,
            "cap": self.cap,
            "epsilon": self.eps,
            "cells": self.cells,
        }


def _cell_partials(cum: np.ndarray, m: int, ns: np.ndarray, K: int):
    """Partial sums over k = 0..K for the cells (m, n), n in ns (all n >= m).

    ``cum[i]`` is sum_{j<i} log w_j (restricted to defined indices), so the
    log of w_{k+m}...w_{k+n} / w_m...w_n is a difference of four entries.
    """
    k = np.arange(K + 1)
    base = cum[ns + 1] - cum[m]
    shifted = cum[ns[:, None] + 1 + k[None, :]] - cum[m + k][None, :]
    terms = np.exp(2.0 * (shifted - base[:, None]))
    sums = np.array([compensated_sum(row) for row in terms])
    return sums, terms[:, -1]


def delta_estimate(
    f: WeightFamily,
    K: int,
    M_max: int,
    cap: float,
    eps: float = 1e-9,
    include_lower: bool = False,
    diagonal_only: bool = False,
    m_min: int = 2,
) -> DeltaEstimate:
    """Scan partial sums sum_{k=0}^{K} ((w_{k+m}...w_{k+n}) / (w_m...w_n))^2.

    Cells are 2 <= m <= n <= M_max (only m = n when ``diagonal_only``).  With
    ``include_lower`` the cells n < m are scanned too; their products are
    empty, every term is 1 and each partial sum is K + 1.

    Every partial sum is a lower bound of delta because all terms are
    positive.  Status is ``certified_divergent`` when some partial sum exceeds
    ``cap``, ``bounded_evidence`` when every cell's last term is below
    ``eps``, and ``inconclusive`` otherwise.
    """
    if K < 2 or M_max < 2:
        raise ValueError("K and M_max must be at least 2")
    if m_min < max(2, f.start):
        raise ValueError("m_min must be at least 2 and inside the family's domain")
    size = M_max + K + 2
    if f.length is not None and f.length < size:
        raise ValueError(f"custom weights need at least {size} entries for K={K}, M_max={M_max}")
    logw = log_weights(f, size)
    logw[:m_min] = 0.0
    cum = np.concatenate([[0.0], np.cumsum(logw)])

    best, witness, worst_last, cells = -math.inf, (m_min, m_min), 0.0, 0
    for m in range(m_min, M_max + 1):
        ns = np.array([m]) if diagonal_only else np.arange(m, M_max + 1)
        # bound the block size to keep memory flat for long K
        step = max(1, 4_000_000 // (K + 1))
        for lo in range(0, len(ns), step):
            block = ns[lo: lo + step]
            sums, last = _cell_partials(cum, m, block, K)
            cells += len(block)
            i = int(np.argmax(sums))
            if sums[i] > best:
                best, witness = float(sums[i]), (m, int(block[i]))
            worst_last = max(worst_last, float(np.max(last)))
    if include_lower and M_max > m_min:
        cells += (M_max - m_min) * (M_max - m_min + 1) // 2
        if K + 1 > best:
            best, witness = float(K + 1), (m_min + 1, m_min)
        worst_last = max(worst_last, 1.0)

    if best > cap:
        status = "certified_divergent"
    elif worst_last < eps:
        status = "bounded_evidence"
    else:
        status = "inconclusive"
    return DeltaEstimate(best, status, K, M_max, witness, worst_last, cap, eps, cells)


def an_partial(n: int, K: int) -> float:
    """sum_{k=1}^{K} (n / (n + k))^2, the m = n diagonal cell for harmonic weights."""
    if n < 1 or K < 1:
        raise ValueError("n and K must be positive")
    k = np.arange(1, K + 1, dtype=float)
    return compensated_sum((n / (n + k)) ** 2)


def an_integral_bound(n: int) -> float:
    """Integral-test lower bound n^2 / (n + 1) for the infinite series."""
    return n * n / (n + 1)
