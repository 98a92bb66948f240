"""Exact rational linear algebra over ``fractions.Fraction``.

Vectors are plain tuples of ``Fraction``.  Matrices and subspaces are small
immutable wrappers.  A :class:`Subspace` always stores the reduced row-echelon
basis of its span, so two subspaces are equal exactly when their stored bases
are equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple  # tuple[Fraction, ...]


class DimensionError(ValueError):
    pass


def as_scalar(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to ``Fraction``.

    Floats are refused: silently turning 0.1 into 3602879701896397/36028797018963968
    is never what a caller wants in exact mode.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        raise TypeError("floats are not exact scalars; pass a Fraction or 'p/q' string")
    # numpy integers and other Rational-likes
    return Fraction(value)


def vector(entries: Iterable) -> Vector:
    return tuple(as_scalar(e) for e in entries)


def zero_vector(dim: int) -> Vector:
    return (Fraction(0),) * dim


def unit(dim: int, i: int) -> Vector:
    if not 0 <= i < dim:
        raise DimensionError(f"index {i} outside 0..{dim - 1}")
    return tuple(Fraction(1) if j == i else Fraction(0) for j in range(dim))


def is_zero(v: Sequence) -> bool:
    return all(x == 0 for x in v)


def top_index(v: Sequence) -> int:
    """Largest index with a nonzero coordinate, or -1 for the zero vector."""
    for i in range(len(v) - 1, -1, -1):
        if v[i] != 0:
            return i
    return -1


def add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v: Vector) -> Vector:
    c = as_scalar(c)
    return tuple(c * a for a in v)


def dot(u: Vector, v: Vector):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


@dataclass(frozen=True)
class Matrix:
    """Dense exact matrix; ``rows`` is a tuple of row tuples."""

    rows: tuple
    ncols: int

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], ncols: int | None = None) -> "Matrix":
        rows = tuple(vector(r) for r in rows)
        if ncols is None:
            if not rows:
                raise DimensionError("ncols is required for a matrix without rows")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise DimensionError("ragged rows")
        return cls(rows, ncols)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        return cls(tuple(zero_vector(ncols) for _ in range(nrows)), ncols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(tuple(unit(n, i) for i in range(n)), n)

    @classmethod
    def diagonal(cls, entries: Sequence) -> "Matrix":
        d = vector(entries)
        n = len(d)
        return cls(tuple(tuple(d[i] if i == j else Fraction(0) for j in range(n)) for i in range(n)), n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def transpose(self) -> "Matrix":
        return Matrix(tuple(self.column(j) for j in range(self.ncols)), self.nrows)

    def is_zero(self) -> bool:
        return all(is_zero(r) for r in self.rows)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")
        return Matrix(tuple(add(a, b) for a, b in zip(self.rows, other.rows)), self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")
        return Matrix(tuple(sub(a, b) for a, b in zip(self.rows, other.rows)), self.ncols)

    def scaled(self, c) -> "Matrix":
        return Matrix(tuple(scale(c, r) for r in self.rows), self.ncols)

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.ncols:
            raise DimensionError(f"vector of length {len(v)} for {self.shape} matrix")
        nz = [(j, x) for j, x in enumerate(v) if x != 0]
        return tuple(sum((r[j] * x for j, x in nz), Fraction(0)) for r in self.rows)

    def __matmul__(self, other):
        if not isinstance(other, Matrix):
            return self.apply(other)
        if self.ncols != other.nrows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        out = []
        zero = Fraction(0)
        for r in self.rows:
            acc = [zero] * other.ncols
            for k, a in enumerate(r):
                if a == 0:
                    continue
                for j, b in enumerate(other.rows[k]):
                    if b != 0:
                        acc[j] += a * b
            out.append(tuple(acc))
        return Matrix(tuple(out), other.ncols)

    def __pow__(self, k: int) -> "Matrix":
        if self.nrows != self.ncols:
            raise DimensionError("power of a non-square matrix")
        if k < 0:
            raise ValueError("negative matrix power")
        result = Matrix.identity(self.nrows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def to_json(self) -> list:
        return [[scalar_to_str(x) for x in r] for r in self.rows]

    @classmethod
    def from_json(cls, data: list, ncols: int | None = None) -> "Matrix":
        return cls.from_rows(data, ncols)


def rref(m: Matrix) -> tuple[Matrix, int]:
    """Reduced row-echelon form and rank.  Pivot = first nonzero entry in the column."""
    rows = [list(r) for r in m.rows]
    nrows, ncols = m.nrows, m.ncols
    pivot_row = 0
    for col in range(ncols):
        if pivot_row == nrows:
            break
        sel = next((i for i in range(pivot_row, nrows) if rows[i][col] != 0), None)
        if sel is None:
            continue
        rows[pivot_row], rows[sel] = rows[sel], rows[pivot_row]
        prow = rows[pivot_row]
        inv = 1 / prow[col]
        if inv != 1:
            prow = [x * inv for x in prow]
            rows[pivot_row] = prow
        for i in range(nrows):
            if i == pivot_row:
                continue
            f = rows[i][col]
            if f != 0:
                ri = rows[i]
                rows[i] = [a - f * b if b != 0 else a for a, b in zip(ri, prow)]
        pivot_row += 1
    return Matrix(tuple(tuple(r) for r in rows), ncols), pivot_row


def rank(m: Matrix) -> int:
    return rref(m)[1]


def rank_of(vectors: Sequence[Sequence], dim: int | None = None) -> int:
    if not vectors:
        return 0
    return rref(Matrix.from_rows(vectors, dim))[1]


def pivot_columns(r: Matrix) -> list:
    """Pivot column of each nonzero row of a matrix already in RREF."""
    cols = []
    for row in r.rows:
        j = next((j for j, x in enumerate(row) if x != 0), None)
        if j is None:
            break
        cols.append(j)
    return cols


@dataclass(frozen=True)
class Subspace:
    """Finite-dimensional subspace of Q^ambient_dim stored by its RREF basis.

    Build instances with :func:`span`; the constructor trusts its input.
    """

    ambient_dim: int
    basis: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __contains__(self, v) -> bool:
        return member(self, v)

    def pivots(self) -> list:
        return [next(j for j, x in enumerate(b) if x != 0) for b in self.basis]

    def to_json(self) -> dict:
        return {"ambient_dim": self.ambient_dim, "basis": [[scalar_to_str(x) for x in b] for b in self.basis]}

    @classmethod
    def from_json(cls, data: dict) -> "Subspace":
        n = int(data["ambient_dim"])
        return span(n, [vector(b) for b in data.get("basis", [])])


def _check_dims(ambient_dim: int, vectors: Iterable[Sequence]):
    vs = [tuple(v) for v in vectors]
    for v in vs:
        if len(v) != ambient_dim:
            raise DimensionError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
    return vs


def span(ambient_dim: int, vectors: Iterable[Sequence]) -> Subspace:
    if ambient_dim < 1:
        raise DimensionError("ambient dimension must be positive")
    vs = [vector(v) for v in _check_dims(ambient_dim, vectors)]
    vs = [v for v in vs if not is_zero(v)]
    if not vs:
        return Subspace(ambient_dim, ())
    r, k = rref(Matrix(tuple(vs), ambient_dim))
    return Subspace(ambient_dim, r.rows[:k])


def zero_subspace(ambient_dim: int) -> Subspace:
    return Subspace(ambient_dim, ())


def coordinate_subspace(ambient_dim: int, indices: Iterable[int]) -> Subspace:
    return span(ambient_dim, [unit(ambient_dim, i) for i in sorted(set(indices))])


def chain_subspace(ambient_dim: int, k: int) -> Subspace:
    """M_k = span{e_0, ..., e_k}; k = -1 gives the zero subspace."""
    return coordinate_subspace(ambient_dim, range(k + 1))


def full_space(ambient_dim: int) -> Subspace:
    return chain_subspace(ambient_dim, ambient_dim - 1)


def kernel_basis(m: Matrix) -> Subspace:
    r, k = rref(m)
    pivots = pivot_columns(r)
    free = [j for j in range(m.ncols) if j not in set(pivots)]
    vs = []
    for f in free:
        v = [Fraction(0)] * m.ncols
        v[f] = Fraction(1)
        for row, p in zip(r.rows[:k], pivots):
            v[p] = -row[f]
        vs.append(tuple(v))
    return span(m.ncols, vs)


def member(s: Subspace, v: Sequence) -> bool:
    if len(v) != s.ambient_dim:
        raise DimensionError(f"vector of length {len(v)} in ambient dimension {s.ambient_dim}")
    # Reduce v against the RREF basis; v is in s iff nothing is left.
    rest = list(vector(v))
    for b in s.basis:
        p = next(j for j, x in enumerate(b) if x != 0)
        c = rest[p]
        if c != 0:
            rest = [a - c * y for a, y in zip(rest, b)]
    return is_zero(rest)


def _same_ambient(*spaces: Subspace) -> int:
    dims = {s.ambient_dim for s in spaces}
    if len(dims) > 1:
        raise DimensionError(f"mixed ambient dimensions {sorted(dims)}")
    return dims.pop()


def sum_subspaces(a: Subspace, b: Subspace) -> Subspace:
    n = _same_ambient(a, b)
    return span(n, a.basis + b.basis)


def intersect_subspaces(a: Subspace, b: Subspace) -> Subspace:
    n = _same_ambient(a, b)
    if a.dim == 0 or b.dim == 0:
        return zero_subspace(n)
    # x = sum c_i a_i = sum d_j b_j  <=>  [A; -B]^T (c, d) = 0
    cols = list(a.basis) + [scale(-1, v) for v in b.basis]
    system = Matrix(tuple(cols), n).transpose()
    ker = kernel_basis(system)
    vs = []
    for coeffs in ker.basis:
        x = zero_vector(n)
        for c, v in zip(coeffs[: a.dim], a.basis):
            if c != 0:
                x = add(x, scale(c, v))
        vs.append(x)
    return span(n, vs)


def is_direct_sum(parts: Sequence[Subspace]) -> bool:
    if not parts:
        return True
    n = _same_ambient(*parts)
    total = span(n, [v for p in parts for v in p.basis])
    return total.dim == sum(p.dim for p in parts)


def top_echelon_basis(s: Subspace) -> list:
    """Basis with distinct top indices, each vector 1 at its own top and 0 at the others' tops.

    This is RREF with the coordinate order reversed; vectors are returned
    sorted by decreasing top index.
    """
    if s.dim == 0:
        return []
    rev = Matrix(tuple(tuple(reversed(b)) for b in s.basis), s.ambient_dim)
    r, k = rref(rev)
    return [tuple(reversed(row)) for row in r.rows[:k]]


def top_indices(s: Subspace) -> list:
    """Sorted set {top(v) : v in s, v != 0}."""
    return sorted(top_index(v) for v in top_echelon_basis(s))


def normalize_top(v: Sequence) -> Vector:
    """Scale v so its top coordinate is 1."""
    t = top_index(v)
    if t < 0:
        raise ValueError("cannot normalize the zero vector")
    return scale(1 / v[t], tuple(v))


def scalar_to_str(x) -> str:
    x = as_scalar(x)
    return f"{x.numerator}/{x.denominator}"


def vector_to_json(v: Sequence) -> list:
    return [scalar_to_str(x) for x in v]


def vector_from_json(data: Sequence) -> Vector:
    return vector(data)
