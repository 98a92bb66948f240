"""Truncated weighted shifts on span{e_0, ..., e_{N-1}}.

The backward shift sends e_n to w_{n-1} e_{n-1} and kills e_0; it maps the
truncation into itself, so its powers are exact.  The forward shift sends e_n
to w_n e_{n+1} and its truncation drops the image of e_{N-1}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .exactlin import DimensionError, Matrix, Vector, as_scalar, scalar_to_str, vector
from .weights import WeightFamily

BACKWARD = "backward"
FORWARD = "forward"


@dataclass(frozen=True)
class ShiftSpec:
    weights: WeightFamily
    N: int
    direction: str = BACKWARD

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be at least 1")
        if self.direction not in (BACKWARD, FORWARD):
            raise ValueError(f"direction must be {BACKWARD!r} or {FORWARD!r}")
        for n in range(self.N - 1):
            if self.weights.eval(n) <= 0:
                raise ValueError(f"weight w_{n} is not positive")

    def w(self, n: int) -> Fraction:
        return self.weights.eval(n)

    def with_direction(self, direction: str) -> "ShiftSpec":
        return ShiftSpec(self.weights, self.N, direction)

    def to_json(self) -> dict:
        d = self.weights.to_json()
        d.update(N=self.N, direction=self.direction)
        return d

    @classmethod
    def from_json(cls, data: dict) -> "ShiftSpec":
        return cls(WeightFamily.from_json(data), int(data["N"]), data.get("direction", BACKWARD))


def backward(weights: WeightFamily, N: int) -> ShiftSpec:
    return ShiftSpec(weights, N, BACKWARD)


def _weight_product(spec: ShiftSpec, lo: int, hi: int) -> Fraction:
    """w_lo * ... * w_{hi-1}."""
    p = Fraction(1)
    for i in range(lo, hi):
        p *= spec.w(i)
    return p


def matrix_of(spec: ShiftSpec, power: int = 1) -> Matrix:
    """Matrix of T^power (forward) or T*^power (backward) on the truncation."""
    if power < 1:
        raise ValueError("power must be at least 1")
    N = spec.N
    rows = [[Fraction(0)] * N for _ in range(N)]
    for n in range(N):
        if spec.direction == BACKWARD:
            if n >= power:
                # T*^p e_n = w_{n-1} ... w_{n-p} e_{n-p}
                rows[n - power][n] = _weight_product(spec, n - power, n)
        elif n + power < N:
            rows[n + power][n] = _weight_product(spec, n, n + power)
    return Matrix.from_rows(rows, N)


def apply(spec: ShiftSpec, power: int, v) -> Vector:
    """Image of v under matrix_of(spec, power), computed without building the matrix."""
    v = vector(v)
    N = spec.N
    if len(v) != N:
        raise DimensionError(f"vector of length {len(v)} for a shift on {N} coordinates")
    if power < 0:
        raise ValueError("power must be nonnegative")
    out = [Fraction(0)] * N
    for n, c in enumerate(v):
        if c == 0:
            continue
        if spec.direction == BACKWARD:
            if n >= power:
                out[n - power] += c * _weight_product(spec, n - power, n)
        elif n + power < N:
            out[n + power] += c * _weight_product(spec, n, n + power)
    return tuple(out)


def normalizer(spec: ShiftSpec) -> Matrix:
    """X = diag(delta_n) with delta_0 = 1, delta_n = w_0 ... w_{n-1}.

    Conjugating the unweighted backward shift gives the weighted one:
    X^-1 T1* X = T*.  So s is T*^r-invariant iff X s is T1*^r-invariant.
    """
    deltas = [Fraction(1)]
    for n in range(1, spec.N):
        deltas.append(deltas[-1] * spec.w(n - 1))
    return Matrix.diagonal(deltas)


def normalizer_inverse(spec: ShiftSpec) -> Matrix:
    x = normalizer(spec)
    return Matrix.diagonal([1 / x[i, i] for i in range(spec.N)])


# ---------------------------------------------------------------------------
# polynomials / analytic functions of the (nilpotent) shift


@dataclass(frozen=True)
class AnalyticFn:
    """f(z) = sum a_i z^i, stored as its (truncated) Taylor coefficients."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", vector(self.coeffs))

    @property
    def degree(self) -> int:
        d = len(self.coeffs) - 1
        while d > 0 and self.coeffs[d] == 0:
            d -= 1
        return d

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def without_constant(self) -> "AnalyticFn":
        return AnalyticFn((0,) + tuple(self.coeffs[1:]))

    def to_json(self) -> list:
        return [scalar_to_str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data) -> "AnalyticFn":
        return cls(tuple(as_scalar(c) for c in data))


def z_times_one_plus_z(m: int) -> AnalyticFn:
    """z (1 + z)^(m-1)."""
    if m < 1:
        raise ValueError("m must be at least 1")
    return AnalyticFn((0,) + tuple(comb(m - 1, i) for i in range(m)))


def geometric_poly(d: int) -> AnalyticFn:
    """z + z^2 + ... + z^d."""
    return AnalyticFn((0,) + (1,) * d)


def power_weighted_poly(d: int, m: int) -> AnalyticFn:
    """sum_{i=1}^{d} i^m z^i."""
    return AnalyticFn((0,) + tuple(i**m for i in range(1, d + 1)))


def analytic_apply(f: AnalyticFn, spec: ShiftSpec) -> Matrix:
    """f(S) for S = matrix_of(spec, 1).  Terms of degree >= N vanish (S^N = 0)."""
    s = matrix_of(spec, 1)
    N = spec.N
    coeffs = list(f.coeffs[:N])
    # Horner: (((a_d S + a_{d-1}) S + ...) S + a_0)
    acc = Matrix.zeros(N, N)
    ident = Matrix.identity(N)
    for a in reversed(coeffs):
        acc = acc @ s
        if a != 0:
            acc = acc + ident.scaled(a)
    return acc
