"""Exact integer and rational matrix algebra.

Everything here runs on Python's arbitrary-precision ``int`` and
``fractions.Fraction``; no floating point is used anywhere.  Matrices are
immutable (tuples of tuples) so they can be shared freely between threads
and cached on lattice objects.

The three workhorses are

* ``smith_normal_form``: diagonalization ``u * m * v = d`` with unimodular
  transforms and a divisibility chain ``d1 | d2 | ...`` on the diagonal,
* ``kernel_basis``: a saturated basis of the integer null space (the
  quotient by the kernel is torsion free, which is what makes discriminant
  groups computed from such quotients correct),
* ``signature``: exact inertia of a symmetric matrix by rational congruence
  reduction.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence


class MatrixShapeError(ValueError):
    """Raised when matrix dimensions do not fit the requested operation."""


def _freeze(rows: Iterable[Iterable], cast) -> tuple:
    out = tuple(tuple(cast(x) for x in row) for row in rows)
    if out and any(len(r) != len(out[0]) for r in out):
        raise MatrixShapeError("ragged rows")
    return out


class IntMatrix:
    """Immutable matrix with arbitrary-precision integer entries."""

    __slots__ = ("_rows",)

    def __init__(self, rows: Iterable[Iterable[int]]):
        self._rows = _freeze(rows, self._check_int)
        if not self._rows or not self._rows[0]:
            raise MatrixShapeError("empty matrix")

    @staticmethod
    def _check_int(x) -> int:
        if isinstance(x, bool) or not isinstance(x, int):
            raise TypeError(f"integer entry expected, got {x!r}")
        return x

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, r: int, c: int) -> "IntMatrix":
        return cls([[0] * c for _ in range(r)])

    @classmethod
    def diagonal(cls, entries: Sequence[int], shape: tuple[int, int] | None = None) -> "IntMatrix":
        r, c = shape if shape is not None else (len(entries), len(entries))
        m = [[0] * c for _ in range(r)]
        for i, e in enumerate(entries):
            m[i][i] = e
        return cls(m)

    @property
    def nrows(self) -> int:
        return len(self._rows)

    @property
    def ncols(self) -> int:
        return len(self._rows[0])

    def rows(self) -> tuple[tuple[int, ...], ...]:
        return self._rows

    def row(self, i: int) -> tuple[int, ...]:
        return self._rows[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self._rows)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self._rows[i][j]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(zip(*self._rows))

    def __mul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise MatrixShapeError("inner dimensions differ")
        cols = other.transpose().rows()
        return IntMatrix(
            [[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self._rows]
        )

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise MatrixShapeError("shape mismatch")
        return IntMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)]
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def __neg__(self) -> "IntMatrix":
        return self.scale(-1)

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix([[k * x for x in r] for r in self._rows])

    def is_symmetric(self) -> bool:
        return self.nrows == self.ncols and self._rows == self.transpose()._rows

    def to_rational(self) -> "RatMatrix":
        return RatMatrix(self._rows)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntMatrix) and self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        return f"IntMatrix({[list(r) for r in self._rows]})"


class RatMatrix:
    """Immutable matrix with exact rational entries (always in lowest terms)."""

    __slots__ = ("_rows",)

    def __init__(self, rows: Iterable[Iterable]):
        self._rows = _freeze(rows, Fraction)
        if not self._rows or not self._rows[0]:
            raise MatrixShapeError("empty matrix")

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def nrows(self) -> int:
        return len(self._rows)

    @property
    def ncols(self) -> int:
        return len(self._rows[0])

    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._rows

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._rows[i]

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self._rows[i][j]

    def transpose(self) -> "RatMatrix":
        return RatMatrix(zip(*self._rows))

    def __mul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.ncols != other.nrows:
            raise MatrixShapeError("inner dimensions differ")
        cols = list(zip(*other._rows))
        return RatMatrix(
            [[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self._rows]
        )

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        return RatMatrix(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)]
        )

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for r in self._rows for x in r)

    def to_integer(self) -> IntMatrix:
        if not self.is_integral():
            raise ValueError("matrix has non-integer entries")
        return IntMatrix([[int(x) for x in r] for r in self._rows])

    def inverse(self) -> "RatMatrix":
        """Exact inverse by Gauss-Jordan elimination."""
        n = self.nrows
        if n != self.ncols:
            raise MatrixShapeError("inverse of non-square matrix")
        a = [list(r) for r in self._rows]
        inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        for col in range(n):
            piv = next((i for i in range(col, n) if a[i][col] != 0), None)
            if piv is None:
                raise ZeroDivisionError("matrix is singular")
            a[col], a[piv] = a[piv], a[col]
            inv[col], inv[piv] = inv[piv], inv[col]
            p = a[col][col]
            a[col] = [x / p for x in a[col]]
            inv[col] = [x / p for x in inv[col]]
            for i in range(n):
                if i != col and a[i][col]:
                    f = a[i][col]
                    a[i] = [x - f * y for x, y in zip(a[i], a[col])]
                    inv[i] = [x - f * y for x, y in zip(inv[i], inv[col])]
        return RatMatrix(inv)

    def __eq__(self, other) -> bool:
        return isinstance(other, RatMatrix) and self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        return f"RatMatrix({[[str(x) for x in r] for r in self._rows]})"


def mat_vec(m: IntMatrix, v: Sequence) -> tuple:
    if len(v) != m.ncols:
        raise MatrixShapeError("vector length mismatch")
    return tuple(sum(a * b for a, b in zip(row, v)) for row in m.rows())


def determinant(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if m.nrows != m.ncols:
        raise MatrixShapeError("determinant of non-square matrix")
    n = m.nrows
    a = [list(r) for r in m.rows()]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if piv is None:
                return 0
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


class SNFResult(NamedTuple):
    d: IntMatrix
    u: IntMatrix
    v: IntMatrix


def smith_normal_form(m: IntMatrix) -> SNFResult:
    """Smith normal form with transforms: ``u * m * v = d``.

    ``u`` and ``v`` are unimodular, ``d`` is diagonal with non-negative
    entries satisfying ``d[0] | d[1] | ...``.  Works for any shape.
    """
    r, c = m.nrows, m.ncols
    a = [list(row) for row in m.rows()]
    u = [[int(i == j) for j in range(r)] for i in range(r)]
    v = [[int(i == j) for j in range(c)] for i in range(c)]

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def col_swap(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def row_add(i, j, k):
        # row_i += k * row_j
        a[i] = [x + k * y for x, y in zip(a[i], a[j])]
        u[i] = [x + k * y for x, y in zip(u[i], u[j])]

    def col_add(i, j, k):
        # col_i += k * col_j
        for row in a:
            row[i] += k * row[j]
        for row in v:
            row[i] += k * row[j]

    def row_negate(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(r, c):
        # Pick the entry of least absolute value as pivot.
        pivot = None
        for i in range(t, r):
            for j in range(t, c):
                if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        row_swap(t, pivot[0])
        col_swap(t, pivot[1])
        while True:
            restart = False
            for i in range(t + 1, r):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    row_add(i, t, -q)
                    if a[i][t]:
                        # Remainder became the new (smaller) pivot.
                        row_swap(t, i)
                        restart = True
                        break
            if restart:
                continue
            for j in range(t + 1, c):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    col_add(j, t, -q)
                    if a[t][j]:
                        col_swap(t, j)
                        restart = True
                        break
            if restart:
                continue
            # Row t and column t are clear; force the pivot to divide the rest.
            bad = None
            for i in range(t + 1, r):
                for j in range(t + 1, c):
                    if a[i][j] % a[t][t]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_add(t, bad, 1)
        t += 1

    for i in range(min(r, c)):
        if a[i][i] < 0:
            row_negate(i)

    d = IntMatrix(a)
    um = IntMatrix(u)
    vm = IntMatrix(v)
    assert um * m * vm == d, "internal error: transform identity violated"
    diag = [d[i, i] for i in range(min(r, c))]
    for x, y in zip(diag, diag[1:]):
        assert y == 0 or (x != 0 and y % x == 0), "internal error: divisibility chain"
    return SNFResult(d, um, vm)


def kernel_basis(m: IntMatrix) -> list[tuple[int, ...]]:
    """Saturated basis of the integer null space ``{x : m x = 0}``.

    The returned vectors span a direct summand of Z^ncols, so the quotient
    by the kernel is torsion free.
    """
    d, _, v = smith_normal_form(m)
    rank = sum(1 for i in range(min(m.nrows, m.ncols)) if d[i, i] != 0)
    basis = []
    for j in range(rank, m.ncols):
        vec = v.column(j)
        lead = next(x for x in vec if x)
        basis.append(vec if lead > 0 else tuple(-x for x in vec))
    return basis


def rank(m: IntMatrix) -> int:
    d, _, _ = smith_normal_form(m)
    return sum(1 for i in range(min(m.nrows, m.ncols)) if d[i, i] != 0)


class Inertia(NamedTuple):
    pos: int
    neg: int
    radical: int


def signature(m: IntMatrix) -> Inertia:
    """Exact inertia (p, n, radical) of a symmetric matrix.

    Computed by rational symmetric congruence reduction; a degenerate form
    is not an error, its radical dimension is reported in the third slot.
    """
    if not m.is_symmetric():
        raise MatrixShapeError("signature of non-symmetric matrix")
    n = m.nrows
    a = [[Fraction(x) for x in row] for row in m.rows()]
    pos = neg = rad = 0
    i = 0
    while i < n:
        if a[i][i] == 0:
            # Try to bring a nonzero diagonal entry into position i.
            j = next((k for k in range(i + 1, n) if a[k][k] != 0), None)
            if j is not None:
                a[i], a[j] = a[j], a[i]
                for row in a:
                    row[i], row[j] = row[j], row[i]
            else:
                j = next((k for k in range(i + 1, n) if a[i][k] != 0), None)
                if j is None:
                    rad += 1
                    i += 1
                    continue
                # Basis change e_i -> e_i + e_j creates 2*a[i][j] on the diagonal.
                for k in range(n):
                    a[i][k] += a[j][k]
                for k in range(n):
                    a[k][i] += a[k][j]
        p = a[i][i]
        if p > 0:
            pos += 1
        else:
            neg += 1
        # Congruence step: row_j -= f*row_i together with col_j -= f*col_i.
        # Only the trailing block changes; row/column i are zeroed directly.
        factors = [a[j][i] / p for j in range(i + 1, n)]
        for j, f in zip(range(i + 1, n), factors):
            if f:
                for k in range(i + 1, n):
                    a[j][k] -= f * a[i][k]
        for j in range(i + 1, n):
            a[j][i] = Fraction(0)
            a[i][j] = Fraction(0)
        i += 1
    assert pos + neg + rad == n
    return Inertia(pos, neg, rad)
