"""Even integral lattices presented by Gram matrices.

A lattice here is a free Z-module with a nondegenerate symmetric bilinear
form whose Gram matrix has an even diagonal.  Negative definite lattices
are the default orientation for the root-lattice constructors (A_n, D_n,
E_k are built from the *negated* Cartan matrix), matching the convention
used throughout the surrounding geometry.

Short-vector enumeration is exact: a rational Cholesky (LDL) decomposition
drives a Fincke-Pohst style bound propagation, with every candidate
verified by exact Fraction arithmetic before it is reported.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable, Sequence

from .linalg import (
    Inertia,
    IntMatrix,
    RatMatrix,
    determinant,
    kernel_basis,
    mat_vec,
    signature,
    smith_normal_form,
)


class LatticeError(ValueError):
    """Base class for lattice domain violations."""


class OddLatticeError(LatticeError):
    """Gram matrix has an odd diagonal entry."""


class DegenerateFormError(LatticeError):
    """The form is degenerate where a nondegenerate one is required."""


class IndefiniteLatticeError(LatticeError):
    """Enumeration was requested on an indefinite lattice."""


class Lattice:
    """An even nondegenerate lattice given by its Gram matrix."""

    __slots__ = ("gram", "name", "_signature", "_det")

    def __init__(self, gram: IntMatrix, name: str | None = None):
        if not gram.is_symmetric():
            raise LatticeError("Gram matrix must be symmetric")
        for i in range(gram.nrows):
            if gram[i, i] % 2:
                raise OddLatticeError(f"diagonal entry {gram[i, i]} at {i} is odd")
        self.gram = gram
        self.name = name
        self._signature: Inertia | None = None
        self._det: int | None = None
        if self.det == 0:
            raise DegenerateFormError("Gram matrix is singular")

    @property
    def rank(self) -> int:
        return self.gram.nrows

    @property
    def det(self) -> int:
        if self._det is None:
            self._det = determinant(self.gram)
        return self._det

    @property
    def signature(self) -> tuple[int, int]:
        if self._signature is None:
            self._signature = signature(self.gram)
        return (self._signature.pos, self._signature.neg)

    def is_negative_definite(self) -> bool:
        p, n = self.signature
        return p == 0 and n == self.rank

    def is_positive_definite(self) -> bool:
        p, n = self.signature
        return n == 0 and p == self.rank

    def inner(self, x: Sequence, y: Sequence):
        """Pairing of two coordinate vectors (integral or rational)."""
        gx = mat_vec(self.gram, list(x))
        return sum(a * b for a, b in zip(y, gx))

    def norm(self, x: Sequence):
        return self.inner(x, x)

    def dual_gram(self) -> RatMatrix:
        """Pairing matrix of the dual basis (the inverse Gram matrix)."""
        return self.gram.to_rational().inverse()

    def vector(self, coords: Sequence[int]) -> "LatticeVector":
        return LatticeVector(tuple(int(c) for c in coords), self)

    def __repr__(self) -> str:
        tag = self.name or f"rank {self.rank}"
        return f"Lattice({tag}, det={self.det}, signature={self.signature})"


@dataclass(frozen=True)
class LatticeVector:
    coords: tuple
    home: Lattice

    def __post_init__(self):
        if len(self.coords) != self.home.rank:
            raise LatticeError("coordinate length does not match lattice rank")

    @property
    def norm(self):
        return self.home.norm(self.coords)

    def inner(self, other: "LatticeVector"):
        return self.home.inner(self.coords, other.coords)


# ---------------------------------------------------------------------------
# Standard lattices


_DYNKIN_EDGES = {
    # Bourbaki numbering; entries are 1-based node pairs.
    "E6": [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)],
    "E7": [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 4)],
    "E8": [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)],
}


def _cartan(name: str) -> IntMatrix:
    kind, num = name[0], name[1:]
    if not num.isdigit():
        raise LatticeError(f"bad Dynkin symbol {name!r}")
    n = int(num)
    if kind == "A" and n >= 1:
        edges = [(i, i + 1) for i in range(1, n)]
    elif kind == "D" and n >= 3:
        edges = [(i, i + 1) for i in range(1, n - 1)] + [(n - 2, n)]
    elif kind == "E" and name in _DYNKIN_EDGES:
        edges = _DYNKIN_EDGES[name]
    else:
        raise LatticeError(f"bad Dynkin symbol {name!r}")
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = 2
    for i, j in edges:
        m[i - 1][j - 1] = m[j - 1][i - 1] = -1
    return IntMatrix(m)


def standard_lattice(name: str, scale: int = 1) -> Lattice:
    """Named lattice, rescaled: ``U`` or a Dynkin symbol like ``A2``/``D4``/``E8``.

    Dynkin-type lattices are negative definite (negated Cartan matrix).
    """
    if scale == 0:
        raise LatticeError("scale must be nonzero")
    if name == "U":
        gram = IntMatrix([[0, 1], [1, 0]])
    else:
        gram = _cartan(name).scale(-1)
    tag = name if scale == 1 else f"{name}({scale})"
    return Lattice(gram.scale(scale), name=tag)


def rank_one(m: int) -> Lattice:
    """The rank-1 lattice generated by a vector of (even) norm m."""
    return Lattice(IntMatrix([[m]]), name=f"<{m}>")


def direct_sum(*lattices: Lattice) -> Lattice:
    """Orthogonal direct sum (block-diagonal Gram matrix)."""
    if not lattices:
        raise LatticeError("empty direct sum")
    n = sum(l.rank for l in lattices)
    rows = [[0] * n for _ in range(n)]
    offset = 0
    for l in lattices:
        for i in range(l.rank):
            for j in range(l.rank):
                rows[offset + i][offset + j] = l.gram[i, j]
        offset += l.rank
    name = " + ".join(l.name or "?" for l in lattices)
    return Lattice(IntMatrix(rows), name=name)


# ---------------------------------------------------------------------------
# Sublattices


@dataclass(frozen=True)
class SublatticeResult:
    lattice: Lattice
    saturation_index: int
    radical_rank: int
    basis: tuple[tuple[int, ...], ...]  # saturated basis rows in ambient coords


def sublattice_gram(ambient: IntMatrix | Lattice, gens: Iterable[Sequence[int]]) -> SublatticeResult:
    """Gram matrix of the saturated span of ``gens`` inside an ambient pairing.

    The ambient Gram matrix may be degenerate; the radical of the induced
    form on the span is quotiented away (its rank is reported), so the
    returned lattice is always nondegenerate.  The saturation index is the
    index of the raw integer span inside its saturation.
    """
    gram = ambient.gram if isinstance(ambient, Lattice) else ambient
    gen_rows = [list(g) for g in gens]
    if not gen_rows:
        raise LatticeError("empty generator list")
    w = IntMatrix(gen_rows)
    if w.ncols != gram.nrows:
        raise LatticeError("generator length does not match ambient rank")
    d, _, v = smith_normal_form(w)
    r = sum(1 for i in range(min(w.nrows, w.ncols)) if d[i, i] != 0)
    if r == 0:
        raise DegenerateFormError("generators span nothing")
    index = 1
    for i in range(r):
        index *= d[i, i]
    # Row space of w equals span of d_i * (rows of v^{-1}); the first r rows
    # of v^{-1} are a basis of the saturation.
    v_inv = v.to_rational().inverse().to_integer()
    basis = [list(v_inv.row(i)) for i in range(r)]
    b = IntMatrix(basis)
    span_gram = b * gram * b.transpose()
    rad = kernel_basis(span_gram)
    if not rad:
        return SublatticeResult(Lattice(span_gram), index, 0, tuple(map(tuple, basis)))
    # Quotient by the radical: complete the kernel to a basis of Z^r and
    # keep the pairing on the complementary part.
    k_cols = IntMatrix(list(zip(*rad)))  # r x rho, kernel vectors as columns
    _, u2, _ = smith_normal_form(k_cols)
    u2_inv = u2.to_rational().inverse().to_integer()
    rho = len(rad)
    if r - rho == 0:
        raise DegenerateFormError("span is totally degenerate")
    comp = [u2_inv.column(j) for j in range(rho, r)]
    q = IntMatrix(
        [[sum(ci * span_gram[i, j] * cj for i, ci in enumerate(c1) for j, cj in enumerate(c2))
          for c2 in comp] for c1 in comp]
    )
    # Ambient coordinates of the quotient basis (as coset representatives).
    amb = [tuple(sum(c[i] * basis[i][k] for i in range(r)) for k in range(gram.nrows)) for c in comp]
    return SublatticeResult(Lattice(q), index, rho, tuple(amb))


# ---------------------------------------------------------------------------
# Short vector enumeration


def _ldl(q: list[list[Fraction]]) -> tuple[list[Fraction], list[list[Fraction]]]:
    """LDL decomposition of a positive definite rational matrix.

    Returns diagonal d and unit-upper u with Q(x) = sum_i d_i (x_i + sum_{j>i} u_ij x_j)^2.
    """
    n = len(q)
    a = [row[:] for row in q]
    d = [Fraction(0)] * n
    u = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        d[i] = a[i][i]
        assert d[i] > 0, "internal error: zero pivot on definite input"
        for j in range(i + 1, n):
            u[i][j] = a[i][j] / d[i]
        for j in range(i + 1, n):
            for k in range(j, n):
                a[j][k] -= d[i] * u[i][j] * u[i][k]
            for k in range(i + 1, j):
                a[j][k] = a[k][j]
    return d, u


def _floor_sqrt(x: Fraction) -> int:
    if x < 0:
        raise ValueError("negative radicand")
    return isqrt(x.numerator * x.denominator) // x.denominator


def _sqrt_exact(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    rn = isqrt(x.numerator)
    rd = isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None


def enumerate_by_norm(q: Sequence[Sequence[Fraction]], target: Fraction) -> list[tuple[int, ...]]:
    """All integer vectors x with x^T q x == target, q positive definite.

    Exact: ranges come from floor square roots padded by one and every
    candidate is re-checked with Fraction arithmetic; the innermost level
    solves the final quadratic exactly.
    """
    n = len(q)
    target = Fraction(target)
    if target < 0:
        return []
    if target == 0:
        return []
    d, u = _ldl([[Fraction(x) for x in row] for row in q])
    out: list[tuple[int, ...]] = []
    coords = [0] * n

    def recurse(i: int, remaining: Fraction):
        c = sum(u[i][j] * coords[j] for j in range(i + 1, n))
        if i == 0:
            s = _sqrt_exact(remaining / d[0])
            if s is None:
                return
            for root in {(-c + s), (-c - s)}:
                if root.denominator == 1:
                    coords[0] = int(root)
                    out.append(tuple(coords))
            return
        bound = _floor_sqrt(remaining / d[i]) + 1
        lo = -c - bound
        hi = -c + bound
        x = int(lo) if lo.denominator == 1 else (lo.numerator // lo.denominator)
        while x <= hi:
            t = d[i] * (x + c) ** 2
            if t <= remaining:
                coords[i] = x
                recurse(i - 1, remaining - t)
            x += 1
        coords[i] = 0

    recurse(n - 1, target)
    return [v for v in out if any(v)]


@dataclass(frozen=True)
class ShortVectors:
    target_norm: object
    representatives: tuple[tuple[int, ...], ...]  # one per {v, -v} pair

    @property
    def count_up_to_sign(self) -> int:
        return len(self.representatives)

    @property
    def count(self) -> int:
        return 2 * len(self.representatives)


def _canonicalize_pairs(vectors: list[tuple[int, ...]]) -> tuple[tuple[int, ...], ...]:
    reps = set()
    for v in vectors:
        lead = next(x for x in v if x)
        reps.add(v if lead > 0 else tuple(-x for x in v))
    assert 2 * len(reps) == len(vectors), "enumeration not closed under negation"
    return tuple(sorted(reps))


def short_vectors(l: Lattice, target_norm: int) -> ShortVectors:
    """All lattice vectors of exactly the given norm, reported up to sign.

    The lattice must be definite; negative definite lattices (the default
    orientation here) are enumerated on the negated Gram matrix.
    """
    if l.is_negative_definite():
        q = [[Fraction(-x) for x in row] for row in l.gram.rows()]
        t = Fraction(-target_norm)
    elif l.is_positive_definite():
        q = [[Fraction(x) for x in row] for row in l.gram.rows()]
        t = Fraction(target_norm)
    else:
        raise IndefiniteLatticeError("short vector enumeration needs a definite lattice")
    found = enumerate_by_norm(q, t)
    for v in found:
        assert l.norm(v) == target_norm
    return ShortVectors(target_norm, _canonicalize_pairs(found))


def dual_short_vectors(l: Lattice, target_norm: Fraction) -> ShortVectors:
    """Vectors of the dual lattice with the given (rational) norm.

    Coordinates are with respect to the dual basis, so the i-th coordinate
    of a result is its pairing with the i-th lattice basis vector.
    """
    dual = l.dual_gram().rows()
    if l.is_negative_definite():
        q = [[-x for x in row] for row in dual]
        t = -Fraction(target_norm)
    elif l.is_positive_definite():
        q = [list(row) for row in dual]
        t = Fraction(target_norm)
    else:
        raise IndefiniteLatticeError("short vector enumeration needs a definite lattice")
    found = enumerate_by_norm(q, t)
    return ShortVectors(Fraction(target_norm), _canonicalize_pairs(found))


def min_nonzero_norm(l: Lattice) -> int:
    """Largest (closest to zero) norm of a nonzero vector, definite lattices."""
    if l.is_negative_definite():
        sign = -1
    elif l.is_positive_definite():
        sign = 1
    else:
        raise IndefiniteLatticeError("minimum norm needs a definite lattice")
    bound = min(abs(l.gram[i, i]) for i in range(l.rank))
    t = 2
    while t <= bound:
        if short_vectors(l, sign * t).representatives:
            return sign * t
        t += 2
    raise AssertionError("internal error: no vector up to the diagonal bound")


# ---------------------------------------------------------------------------
# Gram matrix file format (shared with the CLI)


def gram_to_json(l: Lattice) -> str:
    return json.dumps({"gram": [list(r) for r in l.gram.rows()]})


def lattice_from_json(text: str) -> Lattice:
    data = json.loads(text)
    if not isinstance(data, dict) or "gram" not in data:
        raise ValueError('expected a JSON object {"gram": [[...], ...]}')
    rows = data["gram"]
    if (
        not isinstance(rows, list)
        or not rows
        or not all(isinstance(r, list) and all(isinstance(x, int) for x in r) for r in rows)
    ):
        raise ValueError("gram must be a non-empty list of integer rows")
    m = IntMatrix(rows)
    if not m.is_symmetric():
        raise ValueError("gram matrix must be symmetric")
    return Lattice(m)
