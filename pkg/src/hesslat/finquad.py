"""Finite quadratic forms on finite abelian groups, valued in Q/2Z.

A form lives on A = Z/d1 + ... + Z/dk (with d1 | d2 | ... | dk) and is
stored by its values on the generators together with the bilinear values
b(g_i, g_j).  Values of q are reduced into [0, 2), values of b into
[0, 1); every comparison is exact.  The polarization identity

    q(x) = sum_i x_i^2 q(g_i) + 2 sum_{i<j} x_i x_j b(g_i, g_j)   (mod 2Z)

evaluates q anywhere.

``discriminant_form`` realizes the quotient L*/L of an even lattice: the
group comes from the Smith normal form of the Gram matrix, and q and b
from dual-basis representatives.  ``DiscriminantGroup`` keeps enough of
the transform to map any dual vector to its class.

The 2-torsion of a form whose 2-Sylow subgroup is elementary, and whose
q takes integer values there, restricts to a quadratic form over F2; see
``sylow2_restriction``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from . import f2
from .lattice import Lattice, OddLatticeError
from .linalg import IntMatrix, kernel_basis, smith_normal_form

_ENUM_LIMIT = 10**6


class FinQuadError(ValueError):
    pass


class NonElementaryTwoPartError(FinQuadError):
    """The 2-Sylow subgroup is not 2-elementary (or q is not integral on it)."""


def _mod2(x) -> Fraction:
    return Fraction(x) % 2


def _mod1(x) -> Fraction:
    return Fraction(x) % 1


class FiniteQuadraticForm:
    """A nondegenerate finite quadratic form in canonical presentation."""

    __slots__ = ("orders", "q_gens", "b_mat", "name")

    def __init__(self, orders: Sequence[int], q_gens: Sequence, b_mat: Sequence[Sequence], name: str | None = None):
        orders = tuple(int(d) for d in orders)
        if any(d < 2 for d in orders):
            raise FinQuadError("cyclic orders must be at least 2")
        for a, b in zip(orders, orders[1:]):
            if b % a:
                raise FinQuadError("cyclic orders must form a divisibility chain")
        k = len(orders)
        q_gens = tuple(_mod2(x) for x in q_gens)
        b_mat = tuple(tuple(_mod1(x) for x in row) for row in b_mat)
        if len(q_gens) != k or len(b_mat) != k or any(len(r) != k for r in b_mat):
            raise FinQuadError("generator data size mismatch")
        for i in range(k):
            for j in range(k):
                if b_mat[i][j] != b_mat[j][i]:
                    raise FinQuadError("bilinear values must be symmetric")
            if _mod1(q_gens[i]) != b_mat[i][i]:
                raise FinQuadError("b(g,g) must equal q(g) mod Z")
            if _mod2(orders[i] ** 2 * q_gens[i]) != 0:
                raise FinQuadError(f"q value {q_gens[i]} incompatible with order {orders[i]}")
            for j in range(k):
                if _mod1(orders[i] * b_mat[i][j]) != 0:
                    raise FinQuadError("b value incompatible with generator order")
        self.orders = orders
        self.q_gens = q_gens
        self.b_mat = b_mat
        self.name = name

    # -- basic structure ----------------------------------------------------

    @property
    def group_order(self) -> int:
        n = 1
        for d in self.orders:
            n *= d
        return n

    def elements(self) -> Iterable[tuple[int, ...]]:
        return itertools.product(*(range(d) for d in self.orders))

    def reduce(self, coords: Sequence[int]) -> tuple[int, ...]:
        return tuple(c % d for c, d in zip(coords, self.orders))

    def element_order(self, coords: Sequence[int]) -> int:
        n = 1
        for c, d in zip(coords, self.orders):
            n = lcm(n, d // gcd(d, c % d))
        return n

    def q(self, coords: Sequence[int]) -> Fraction:
        total = Fraction(0)
        k = len(self.orders)
        for i in range(k):
            ci = coords[i]
            if not ci:
                continue
            total += ci * ci * self.q_gens[i]
            for j in range(i + 1, k):
                if coords[j]:
                    total += 2 * ci * coords[j] * self.b_mat[i][j]
        return _mod2(total)

    def bilinear(self, x: Sequence[int], y: Sequence[int]) -> Fraction:
        total = Fraction(0)
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if yj:
                    total += xi * yj * self.b_mat[i][j]
        return _mod1(total)

    def add(self, x: Sequence[int], y: Sequence[int]) -> tuple[int, ...]:
        return self.reduce([a + b for a, b in zip(x, y)])

    def is_nondegenerate(self) -> bool:
        if self.group_order > _ENUM_LIMIT:
            raise FinQuadError("group too large for the radical check")
        gens = [tuple(int(i == j) for j in range(len(self.orders))) for i in range(len(self.orders))]
        radical = [
            x for x in self.elements() if all(self.bilinear(x, g) == 0 for g in gens)
        ]
        return len(radical) == 1

    def negate(self) -> "FiniteQuadraticForm":
        return FiniteQuadraticForm(
            self.orders,
            [-x for x in self.q_gens],
            [[-x for x in row] for row in self.b_mat],
            name=f"-({self.name})" if self.name else None,
        )

    def element(self, coords: Sequence[int]) -> "DiscElement":
        return DiscElement(self, self.reduce(coords))

    # -- iteration helpers ---------------------------------------------------

    def elements_of_order_dividing(self, n: int) -> Iterable[tuple[int, ...]]:
        """Coordinates of all x with n*x = 0."""
        choices = []
        for d in self.orders:
            step = d // gcd(d, n)
            choices.append(range(0, d, step))
        return itertools.product(*choices)

    def census(self) -> dict[tuple[int, Fraction], int]:
        """Count elements by (order, q value); q values canonical in [0, 2)."""
        if self.group_order > _ENUM_LIMIT:
            raise FinQuadError("group too large for a census")
        out: dict[tuple[int, Fraction], int] = {}
        for x in self.elements():
            key = (self.element_order(x), self.q(x))
            out[key] = out.get(key, 0) + 1
        return out

    # -- presentation changes -------------------------------------------------

    def direct_sum(self, other: "FiniteQuadraticForm") -> "FiniteQuadraticForm":
        orders = self.orders + other.orders
        k1, k2 = len(self.orders), len(other.orders)
        q = list(self.q_gens) + list(other.q_gens)
        b = [[Fraction(0)] * (k1 + k2) for _ in range(k1 + k2)]
        for i in range(k1):
            for j in range(k1):
                b[i][j] = self.b_mat[i][j]
        for i in range(k2):
            for j in range(k2):
                b[k1 + i][k1 + j] = other.b_mat[i][j]
        name = None
        if self.name and other.name:
            name = f"{self.name} + {other.name}"
        return _represent(orders, q, b, name)

    # -- subgroups and quotients ----------------------------------------------

    def orthogonal_subgroup_basis(self, h: Sequence[int]) -> list[tuple[int, ...]]:
        """Integer generating vectors of {x : b(x, h) = 0 in Q/Z}."""
        k = len(self.orders)
        vals = [self.bilinear(tuple(int(i == j) for j in range(k)), h) for i in range(k)]
        den = lcm(*[v.denominator for v in vals]) if vals else 1
        row = [int(v * den) for v in vals] + [den]
        basis = kernel_basis(IntMatrix([row]))
        return [v[:k] for v in basis]

    def quotient_form(self, subgroup_basis: Sequence[Sequence[int]], kill: Sequence[Sequence[int]]):
        """The form induced on <subgroup>/<kill>.

        ``kill`` must be an isotropic subgroup of the subgroup (q = 0 and
        b integral against every subgroup element), so q descends.  Returns
        (form, lifts) where lifts[i] is an ambient coordinate vector
        representing the i-th generator of the quotient.
        """
        form, lifts, _ = _quotient_with_coords(self, subgroup_basis, kill)
        return form, lifts

    # -- serialization ----------------------------------------------------------

    def to_json(self) -> str:
        return json.dumps(
            {
                "orders": list(self.orders),
                "q": [str(x) for x in self.q_gens],
                "b": [[str(x) for x in row] for row in self.b_mat],
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "FiniteQuadraticForm":
        data = json.loads(text)
        return cls(
            data["orders"],
            [Fraction(s) for s in data["q"]],
            [[Fraction(s) for s in row] for row in data["b"]],
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FiniteQuadraticForm)
            and self.orders == other.orders
            and self.q_gens == other.q_gens
            and self.b_mat == other.b_mat
        )

    def __hash__(self) -> int:
        return hash((self.orders, self.q_gens, self.b_mat))

    def __repr__(self) -> str:
        tag = f" {self.name}" if self.name else ""
        return f"FiniteQuadraticForm{tag}(orders={self.orders})"


@dataclass(frozen=True)
class DiscElement:
    form: FiniteQuadraticForm
    coords: tuple[int, ...]

    @property
    def order(self) -> int:
        return self.form.element_order(self.coords)

    @property
    def q_value(self) -> Fraction:
        return self.form.q(self.coords)

    def __add__(self, other: "DiscElement") -> "DiscElement":
        assert self.form is other.form
        return DiscElement(self.form, self.form.add(self.coords, other.coords))


# ---------------------------------------------------------------------------
# Presentation plumbing


def _span_basis(vectors: list[list[int]]) -> list[list[int]]:
    """Basis (as rows) of the integer span of the given row vectors."""
    m = IntMatrix(vectors)
    d, u, _ = smith_normal_form(m.transpose())
    # Columns of the original span: span(X) = span(d_i * col_i(u^{-1})).
    u_inv = u.to_rational().inverse().to_integer()
    out = []
    for i in range(min(d.nrows, d.ncols)):
        if d[i, i]:
            out.append([d[i, i] * x for x in u_inv.column(i)])
    n = m.ncols
    assert len(out) == n, "span is not of full rank"
    return out


def _express_in_basis(big: list[list[int]], small: list[list[int]]) -> IntMatrix:
    """Matrix T with small_j = sum_i big_i T[i][j] (columns are coordinates)."""
    bm = IntMatrix(list(zip(*big)))
    sm = IntMatrix(list(zip(*small)))
    t = bm.to_rational().inverse() * sm.to_rational()
    if not t.is_integral():
        raise FinQuadError("sublattice is not contained in the ambient span")
    return t.to_integer()


def _represent(orders: Sequence[int], q: Sequence[Fraction], b: Sequence[Sequence[Fraction]], name) -> FiniteQuadraticForm:
    """Re-present arbitrary cyclic data in canonical divisibility-chain form."""
    k = len(orders)
    chain = all(orders[i + 1] % orders[i] == 0 for i in range(k - 1))
    if chain:
        return FiniteQuadraticForm(orders, q, b, name)
    rel = IntMatrix.diagonal(list(orders))
    d, u, _ = smith_normal_form(rel)
    u_inv = u.to_rational().inverse().to_integer()
    keep = [j for j in range(k) if d[j, j] > 1]
    gens = [u_inv.column(j) for j in keep]

    def q_of(vec):
        total = Fraction(0)
        for i in range(k):
            if vec[i]:
                total += vec[i] * vec[i] * Fraction(q[i])
                for j in range(i + 1, k):
                    if vec[j]:
                        total += 2 * vec[i] * vec[j] * Fraction(b[i][j])
        return _mod2(total)

    def b_of(v, w):
        total = Fraction(0)
        for i in range(k):
            if v[i]:
                for j in range(k):
                    if w[j]:
                        total += v[i] * w[j] * Fraction(b[i][j])
        return _mod1(total)

    new_orders = [d[j, j] for j in keep]
    new_q = [q_of(g) for g in gens]
    new_b = [[b_of(g, h) for h in gens] for g in gens]
    return FiniteQuadraticForm(new_orders, new_q, new_b, name)


# ---------------------------------------------------------------------------
# Discriminant forms of even lattices


class DiscriminantGroup(FiniteQuadraticForm):
    """The discriminant form A_L = L*/L of an even lattice.

    Beyond the form itself, this keeps the lattice and the class map, so
    dual vectors (given by their pairing vector against the lattice basis)
    can be reduced to discriminant classes.
    """

    __slots__ = ("lattice", "_u", "_kept", "generator_lifts")

    def __init__(self, lattice: Lattice):
        gram = lattice.gram
        for i in range(gram.nrows):
            if gram[i, i] % 2:
                raise OddLatticeError("discriminant forms require an even lattice")
        d, u, _ = smith_normal_form(gram)
        n = gram.nrows
        u_inv = u.to_rational().inverse().to_integer()
        kept = [i for i in range(n) if d[i, i] > 1]
        gram_inv = gram.to_rational().inverse()
        ys = [u_inv.column(i) for i in kept]

        def pair(y1, y2):
            total = Fraction(0)
            for a, row in zip(y1, gram_inv.rows()):
                if a:
                    total += a * sum(r * b2 for r, b2 in zip(row, y2))
            return total

        orders = [d[i, i] for i in kept]
        q = [_mod2(pair(y, y)) for y in ys]
        b = [[_mod1(pair(y1, y2)) for y2 in ys] for y1 in ys]
        super().__init__(orders, q, b, name=f"A({lattice.name})" if lattice.name else None)
        self.lattice = lattice
        self._u = u
        self._kept = tuple(kept)
        # Lift of each generator into L* as rational basis coordinates.
        self.generator_lifts = tuple(
            tuple(sum(row[j] * y[j] for j in range(n)) for row in gram_inv.rows()) for y in ys
        )

    def class_of_pairings(self, pairings: Sequence[int]) -> tuple[int, ...]:
        """Class of the dual vector with the given pairings against the basis."""
        full = [sum(self._u[i, j] * pairings[j] for j in range(len(pairings))) for i in range(self._u.nrows)]
        return tuple(full[i] % self.orders[k] for k, i in enumerate(self._kept))

    def class_of_dual(self, coords: Sequence) -> tuple[int, ...]:
        """Class of a dual vector given by rational lattice-basis coordinates."""
        pair = [sum(Fraction(c) * g for c, g in zip(coords, row)) for row in self.lattice.gram.rows()]
        if any(p.denominator != 1 for p in pair):
            raise FinQuadError("vector is not in the dual lattice")
        return self.class_of_pairings([int(p) for p in pair])


def discriminant_form(l: Lattice) -> DiscriminantGroup:
    """The finite quadratic form on L*/L of an even nondegenerate lattice."""
    return DiscriminantGroup(l)


def count_by_order_and_value(q: FiniteQuadraticForm) -> dict[tuple[int, Fraction], int]:
    """Census of elements keyed by (order, q value), the identity as order 1."""
    return q.census()


# ---------------------------------------------------------------------------
# Restriction to the 2-Sylow part


@dataclass(frozen=True)
class TwoTorsionSpace:
    space: f2.F2QuadraticSpace
    # coordinates in the parent form of each F2 basis vector
    embedding: tuple[tuple[int, ...], ...]
    parent: FiniteQuadraticForm

    def lift(self, x: int) -> tuple[int, ...]:
        """Parent coordinates of an F2 vector."""
        out = [0] * len(self.parent.orders)
        for i, emb in enumerate(self.embedding):
            if x >> i & 1:
                out = list(self.parent.add(out, emb))
        return tuple(out)


def sylow2_restriction(form: FiniteQuadraticForm) -> TwoTorsionSpace:
    """The restriction of q to the 2-Sylow subgroup as a form over F2.

    Requires the 2-Sylow subgroup to be 2-elementary and q to take values
    in {0, 1} on it; anything else is reported as an error, never coerced.
    """
    for d in form.orders:
        if d % 4 == 0:
            raise NonElementaryTwoPartError(f"cyclic factor of order {d} has a Z/4 part")
    gens = []
    for i, d in enumerate(form.orders):
        if d % 2 == 0:
            g = tuple((d // 2) if i == j else 0 for j in range(len(form.orders)))
            gens.append(g)
    dim = len(gens)
    q_bits = 0
    for i, g in enumerate(gens):
        val = form.q(g)
        if val not in (0, 1):
            raise NonElementaryTwoPartError(f"q value {val} on 2-torsion is not F2-valued")
        q_bits |= int(val) << i
    rows = []
    for i, g in enumerate(gens):
        r = 0
        for j, h in enumerate(gens):
            if i == j:
                continue
            val = form.bilinear(g, h)
            if val not in (0, Fraction(1, 2)):
                raise NonElementaryTwoPartError("bilinear value on 2-torsion is not half-integral")
            if val:
                r |= 1 << j
        rows.append(r)
    space = f2.F2QuadraticSpace(dim, rows, q_bits)
    return TwoTorsionSpace(space, tuple(gens), form)


# ---------------------------------------------------------------------------
# Isomorphism testing


@dataclass(frozen=True)
class IsomorphismResult:
    isomorphic: bool
    # images of the generators of the first form, as coordinates in the second
    witness: tuple[tuple[int, ...], ...] | None
    reason: str


def is_isomorphic(q1: FiniteQuadraticForm, q2: FiniteQuadraticForm) -> IsomorphismResult:
    """Decide isometry, with an explicit generator-image witness when true.

    Invariant screening first (group type, then the (order, value) census);
    the witness search is a backtracking assignment of generator images
    constrained by orders, q values and pairwise bilinear values.
    """
    if q1.orders != q2.orders:
        return IsomorphismResult(False, None, "group types differ")
    if q1.census() != q2.census():
        return IsomorphismResult(False, None, "value census differs")
    if q1.group_order > 2000:
        # Large groups handled only in the 2-elementary case.
        try:
            s1 = sylow2_restriction(q1)
            s2 = sylow2_restriction(q2)
        except NonElementaryTwoPartError:
            raise FinQuadError("witness search limited to order <= 2000 or 2-elementary forms")
        if s1.space.dim != len(q1.orders):
            raise FinQuadError("witness search limited to order <= 2000 or 2-elementary forms")
        w = f2.isometry_witness(s1.space, s2.space)
        if w is None:
            return IsomorphismResult(False, None, "F2 canonical types differ")
        images = tuple(s2.lift(f2.apply_map(w, 1 << i)) for i in range(s1.space.dim))
        return IsomorphismResult(True, images, "F2 canonical split")

    by_profile: dict[tuple[int, Fraction], list[tuple[int, ...]]] = {}
    for x in q2.elements():
        by_profile.setdefault((q2.element_order(x), q2.q(x)), []).append(x)
    k = len(q1.orders)
    gens1 = [tuple(int(i == j) for j in range(k)) for i in range(k)]
    images: list[tuple[int, ...]] = []

    def assign(i: int) -> bool:
        if i == k:
            return _spans_all(q2, images)
        g = gens1[i]
        for cand in by_profile.get((q1.element_order(g), q1.q(g)), []):
            if all(
                q2.bilinear(cand, images[j]) == q1.bilinear(g, gens1[j]) for j in range(i)
            ):
                images.append(cand)
                if assign(i + 1):
                    return True
                images.pop()
        return False

    if assign(0):
        return IsomorphismResult(True, tuple(images), "backtracking witness")
    return IsomorphismResult(False, None, "exhaustive witness search failed")


def _spans_all(form: FiniteQuadraticForm, gens: Sequence[tuple[int, ...]]) -> bool:
    seen = {tuple([0] * len(form.orders))}
    frontier = [tuple([0] * len(form.orders))]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = form.add(x, g)
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return len(seen) == form.group_order


def verify_witness(q1: FiniteQuadraticForm, q2: FiniteQuadraticForm, witness) -> bool:
    """Exhaustively check that the generator images define an isometry."""
    k = len(q1.orders)
    for x in q1.elements():
        img = tuple([0] * len(q2.orders))
        for i in range(k):
            if x[i]:
                scaled = q2.reduce([x[i] * c for c in witness[i]])
                img = q2.add(img, scaled)
        if q1.q(x) != q2.q(img):
            return False
    return True


# ---------------------------------------------------------------------------
# Orthogonal groups


@dataclass(frozen=True)
class OrthogonalGroupInfo:
    order: int
    generator_count: int


def f2_orthogonal_group(space: f2.F2QuadraticSpace) -> tuple[int, list[list[int]]]:
    """(order, generating maps) of the orthogonal group of an F2 form.

    For dimension at most 4 the group is enumerated outright by
    backtracking (this also covers the one case where transvections
    under-generate); otherwise the transvections generate and a
    stabilizer chain on the permutation action of all nonzero vectors
    computes the order.
    """
    n = space.dim
    if n <= 4:
        auts = _enumerate_f2_isometries(space)
        return len(auts), auts
    from .permgroup import group_order

    gens = [f2.transvection_permutation(space, a) for a in space.nonisotropic_vectors()]
    order = group_order(gens)
    maps = [f2.transvection(space, a) for a in space.nonisotropic_vectors()]
    return order, maps


def _enumerate_f2_isometries(space: f2.F2QuadraticSpace) -> list[list[int]]:
    n = space.dim
    out: list[list[int]] = []
    rows: list[int] = []

    def assign(i: int):
        if i == n:
            out.append(list(rows))
            return
        for cand in range(1, 1 << n):
            if f2.span_size(rows + [cand]) != 1 << (i + 1):
                continue
            if space.q(cand) != space.q(1 << i):
                continue
            if any(space.b(cand, rows[j]) != space.b(1 << i, 1 << j) for j in range(i)):
                continue
            rows.append(cand)
            assign(i + 1)
            rows.pop()

    assign(0)
    return out


def orthogonal_group_order(form: FiniteQuadraticForm | f2.F2QuadraticSpace) -> OrthogonalGroupInfo:
    """Order of the isometry group, via a stabilizer chain on nonzero elements.

    A finite quadratic form splits canonically into its p-primary parts,
    and every isometry preserves the splitting, so the group is the
    product over p.  The 2-part must be F2-representable; odd parts are
    enumerated directly (they are tiny here).
    """
    if isinstance(form, f2.F2QuadraticSpace):
        order, gens = f2_orthogonal_group(form)
        return OrthogonalGroupInfo(order, len(gens))
    two = sylow2_restriction(form)
    order2, gens2 = f2_orthogonal_group(two.space)
    odd_orders = [d for d in form.orders if _odd_part(d) > 1]
    odd = 1
    count_odd = 0
    if odd_orders:
        odd, count_odd = _odd_part_group(form)
    return OrthogonalGroupInfo(order2 * odd, len(gens2) + count_odd)


def _odd_part(d: int) -> int:
    while d % 2 == 0:
        d //= 2
    return d


def _odd_part_group(form: FiniteQuadraticForm) -> tuple[int, int]:
    """Isometry count of the odd part, by exhaustive assignment."""
    k = len(form.orders)
    odd_gens = []
    for i, d in enumerate(form.orders):
        m = _odd_part(d)
        if m > 1:
            odd_gens.append(tuple((d // m) if i == j else 0 for j in range(k)))
    if not odd_gens:
        return 1, 0
    subgroup: set[tuple[int, ...]] = {tuple([0] * k)}
    frontier = [tuple([0] * k)]
    while frontier:
        x = frontier.pop()
        for g in odd_gens:
            y = form.add(x, g)
            if y not in subgroup:
                subgroup.add(y)
                frontier.append(y)
    if len(subgroup) > 10**4:
        raise FinQuadError("odd part too large")
    count = 0

    def assign(i: int, images: list[tuple[int, ...]]):
        nonlocal count
        if i == len(odd_gens):
            gen_set = set()
            span = {tuple([0] * k)}
            frontier = [tuple([0] * k)]
            while frontier:
                x = frontier.pop()
                for g in images:
                    y = form.add(x, g)
                    if y not in span:
                        span.add(y)
                        frontier.append(y)
            if len(span) == len(subgroup):
                count += 1
            return
        g = odd_gens[i]
        for cand in sorted(subgroup):
            if form.element_order(cand) != form.element_order(g):
                continue
            if form.q(cand) != form.q(g):
                continue
            if any(form.bilinear(cand, images[j]) != form.bilinear(g, odd_gens[j]) for j in range(i)):
                continue
            assign(i + 1, images + [cand])

    assign(0, [])
    return count, len(odd_gens)


# ---------------------------------------------------------------------------
# Gluing


@dataclass(frozen=True)
class GlueResult:
    found: bool
    generator: tuple[int, ...] | None
    quotient: FiniteQuadraticForm | None
    quotient_space: f2.F2QuadraticSpace | None
    witness_to_target: list[int] | None
    candidates_tried: int

    # data needed to map ambient classes into the quotient
    _coord_data: tuple | None = None

    def quotient_coords(self, ambient: Sequence[int]) -> int:
        """F2 coordinates in the quotient space of an ambient 2-torsion class."""
        assert self._coord_data is not None
        b1_inv, u3, kept, d3, form = self._coord_data
        y = [sum(row[j] * Fraction(ambient[j]) for j in range(len(ambient))) for row in b1_inv.rows()]
        if any(v.denominator != 1 for v in y):
            raise FinQuadError("element is not in the orthogonal subgroup")
        full = [sum(u3[i, j] * int(y[j]) for j in range(len(y))) for i in range(u3.nrows)]
        coords = [full[i] % d3[idx] for idx, i in enumerate(kept)]
        x = 0
        for i, c in enumerate(coords):
            assert d3[i] == 2
            x |= (c % 2) << i
        return x


def glue_check(q_big: FiniteQuadraticForm, glue_order: int, target: f2.F2QuadraticSpace) -> GlueResult:
    """Search for an isotropic subgroup H of the given prime order with
    H-perp/H isometric (as a 2-elementary quadratic form) to the target.

    All candidate cyclic subgroups are tried in deterministic order; the
    first witness wins.  When none works the result records the exhaustion.
    """
    tried = 0
    seen_subgroups: set[frozenset] = set()
    for h in sorted(q_big.elements_of_order_dividing(glue_order)):
        if q_big.element_order(h) != glue_order:
            continue
        subgroup = frozenset(
            q_big.reduce([m * c for c in h]) for m in range(glue_order)
        )
        if subgroup in seen_subgroups:
            continue
        seen_subgroups.add(subgroup)
        tried += 1
        if q_big.q(h) != 0:
            continue
        perp = q_big.orthogonal_subgroup_basis(h)
        form, lifts, coord_data = _quotient_with_coords(q_big, perp, [list(h)])
        if form.group_order != 1 << target.dim:
            continue
        if any(d != 2 for d in form.orders):
            continue
        two = sylow2_restriction(form)
        w = f2.isometry_witness(two.space, target)
        if w is None:
            continue
        return GlueResult(True, tuple(h), form, two.space, w, tried, coord_data)
    return GlueResult(False, None, None, None, None, tried, None)


def _quotient_with_coords(form: FiniteQuadraticForm, subgroup_basis, kill):
    k = len(form.orders)
    relations = [list(g) for g in kill]
    relations += [[d if i == j else 0 for j in range(k)] for i, d in enumerate(form.orders)]
    big = _span_basis([list(g) for g in subgroup_basis] + relations)
    small = _span_basis(relations)
    t = _express_in_basis(big, small)
    d3, u3, _ = smith_normal_form(t)
    u3_inv = u3.to_rational().inverse().to_integer()
    kept = [j for j in range(k) if d3[j, j] > 1]
    lifts = []
    for j in kept:
        col = u3_inv.column(j)
        amb = tuple(sum(col[i] * big[i][c] for i in range(k)) for c in range(k))
        lifts.append(form.reduce(amb))
    orders = [d3[j, j] for j in kept]
    q = [form.q(v) for v in lifts]
    b = [[form.bilinear(v, w) for w in lifts] for v in lifts]
    out = FiniteQuadraticForm(orders, q, b)
    big_m = IntMatrix(big).transpose()
    coord_data = (
        big_m.to_rational().inverse(),
        u3,
        tuple(kept),
        tuple(d3[j, j] for j in kept),
        out,
    )
    return out, lifts, coord_data
