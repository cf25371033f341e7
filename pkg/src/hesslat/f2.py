"""Quadratic forms over the two-element field.

Vectors of an n-dimensional space are bitmask integers in [0, 2^n); bit i
is the coefficient of the i-th basis vector.  A space carries

* ``b_rows``: the symmetric bilinear Gram matrix as bitmask rows (the
  diagonal is zero, i.e. b is alternating), and
* ``q_basis``: the values of the quadratic form on the basis, packed into
  a single bitmask,

and evaluates q(x) = sum_i x_i q(e_i) + sum_{i<j} x_i x_j b(e_i, e_j).
This is the standard polarization identity q(x+y) = q(x)+q(y)+b(x,y).

The two irreducible nondegenerate blocks in dimension 2 are written "u"
(basis values 0,0; the sum has q=1) and "v" (all three nonzero vectors
have q=1); every nondegenerate even-dimensional form splits into copies
of these, and u+u is isometric to v+v.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Iterable, Sequence


class F2Error(ValueError):
    pass


def _popparity(x: int) -> int:
    return bin(x).count("1") & 1


class F2QuadraticSpace:
    __slots__ = ("dim", "b_rows", "q_basis", "_q_table", "_perp")

    def __init__(self, dim: int, b_rows: Sequence[int], q_basis: int):
        if len(b_rows) != dim:
            raise F2Error("bilinear matrix size mismatch")
        mask = (1 << dim) - 1
        rows = [r & mask for r in b_rows]
        for i in range(dim):
            if rows[i] >> i & 1:
                raise F2Error("bilinear form must be alternating (zero diagonal)")
            for j in range(dim):
                if (rows[i] >> j & 1) != (rows[j] >> i & 1):
                    raise F2Error("bilinear matrix must be symmetric")
        self.dim = dim
        self.b_rows = tuple(rows)
        self.q_basis = q_basis & mask
        self._q_table: tuple[int, ...] | None = None
        self._perp: list[int] | None = None

    # -- evaluation ---------------------------------------------------------

    def q(self, x: int) -> int:
        acc = bin(self.q_basis & x).count("1")
        y = x
        while y:
            low = y & -y
            i = low.bit_length() - 1
            y ^= low
            acc += bin(self.b_rows[i] & y).count("1")
        return acc & 1

    def b(self, x: int, y: int) -> int:
        m = 0
        while y:
            low = y & -y
            m ^= self.b_rows[low.bit_length() - 1]
            y ^= low
        return _popparity(m & x)

    def q_table(self) -> tuple[int, ...]:
        if self._q_table is None:
            self._q_table = tuple(self.q(x) for x in range(1 << self.dim))
        return self._q_table

    def perp_masks(self) -> list[int]:
        """perp_masks()[a] has bit v set iff b(v, a) == 0."""
        if self._perp is None:
            n = 1 << self.dim
            # b(v, a) as a linear functional of v: parity(v & row(a)).
            rowof = [0] * n
            for a in range(n):
                low = a & -a
                rowof[a] = rowof[a ^ low] ^ self.b_rows[low.bit_length() - 1] if a else 0
            masks = [0] * n
            for a in range(n):
                r = rowof[a]
                m = 0
                for v in range(n):
                    if not _popparity(v & r):
                        m |= 1 << v
                masks[a] = m
            self._perp = masks
        return self._perp

    # -- structure ----------------------------------------------------------

    def vectors(self) -> range:
        return range(1 << self.dim)

    def nonzero_vectors(self) -> range:
        return range(1, 1 << self.dim)

    def nonisotropic_vectors(self) -> list[int]:
        qt = self.q_table()
        return [x for x in self.nonzero_vectors() if qt[x]]

    def isotropic_count(self) -> tuple[int, int]:
        qt = self.q_table()
        iso = qt.count(0)
        return iso, (1 << self.dim) - iso

    def is_nondegenerate(self) -> bool:
        # The radical of b is the kernel of the bilinear Gram matrix.
        rows = list(self.b_rows)
        rank = 0
        for bit in range(self.dim):
            piv = next((i for i in range(rank, self.dim) if rows[i] >> bit & 1), None)
            if piv is None:
                continue
            rows[rank], rows[piv] = rows[piv], rows[rank]
            for i in range(self.dim):
                if i != rank and rows[i] >> bit & 1:
                    rows[i] ^= rows[rank]
            rank += 1
        return rank == self.dim

    def plus_type(self) -> bool:
        """True for split (plus) type, decided by the isotropic count."""
        if self.dim % 2 or not self.is_nondegenerate():
            raise F2Error("type is defined for nondegenerate even-dimensional forms")
        iso, _ = self.isotropic_count()
        half = self.dim // 2
        if iso == (1 << (self.dim - 1)) + (1 << (half - 1)):
            return True
        if iso == (1 << (self.dim - 1)) - (1 << (half - 1)):
            return False
        raise AssertionError("internal error: isotropic count matches neither type")

    def direct_sum(self, other: "F2QuadraticSpace") -> "F2QuadraticSpace":
        n, m = self.dim, other.dim
        rows = [r for r in self.b_rows] + [r << n for r in other.b_rows]
        # Pad self's rows with zero cross blocks (already zero above bit n).
        return F2QuadraticSpace(n + m, rows, self.q_basis | (other.q_basis << n))

    def transform(self, basis: Sequence[int]) -> "F2QuadraticSpace":
        """The same form written in a new basis (given as old-coordinate masks)."""
        n = self.dim
        if len(basis) != n:
            raise F2Error("need a full basis")
        rows = []
        for i in range(n):
            r = 0
            for j in range(n):
                if self.b(basis[i], basis[j]):
                    r |= 1 << j
            rows.append(r)
        qb = 0
        for i in range(n):
            if self.q(basis[i]):
                qb |= 1 << i
        return F2QuadraticSpace(n, rows, qb)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, F2QuadraticSpace)
            and self.dim == other.dim
            and self.b_rows == other.b_rows
            and self.q_basis == other.q_basis
        )

    def __hash__(self) -> int:
        return hash((self.dim, self.b_rows, self.q_basis))

    def __repr__(self) -> str:
        return f"F2QuadraticSpace(dim={self.dim})"


def block_space(blocks: str) -> F2QuadraticSpace:
    """Direct sum of 2-dimensional blocks, e.g. "uv" or "uuuuu".

    "u": q-values (0,0) on the hyperbolic pair; "v": q-values (1,1).
    """
    spaces = []
    for ch in blocks:
        if ch == "u":
            spaces.append(F2QuadraticSpace(2, [0b10, 0b01], 0b00))
        elif ch == "v":
            spaces.append(F2QuadraticSpace(2, [0b10, 0b01], 0b11))
        else:
            raise F2Error(f"unknown block {ch!r}")
    if not spaces:
        raise F2Error("empty block string")
    return reduce(F2QuadraticSpace.direct_sum, spaces)


# ---------------------------------------------------------------------------
# Linear algebra over F2 (masks as vectors, lists of masks as matrices)


def apply_map(rows: Sequence[int], x: int) -> int:
    """Image of x under the linear map sending e_i to rows[i]."""
    out = 0
    while x:
        low = x & -x
        out ^= rows[low.bit_length() - 1]
        x ^= low
    return out


def invert_map(rows: Sequence[int], dim: int) -> list[int]:
    """Inverse of an invertible linear map given by basis images."""
    a = list(rows)
    inv = [1 << i for i in range(dim)]
    for bit in range(dim):
        piv = next((i for i in range(bit, dim) if a[i] >> bit & 1), None)
        if piv is None:
            raise F2Error("map is singular")
        a[bit], a[piv] = a[piv], a[bit]
        inv[bit], inv[piv] = inv[piv], inv[bit]
        for i in range(dim):
            if i != bit and a[i] >> bit & 1:
                a[i] ^= a[bit]
                inv[i] ^= inv[bit]
    # Now a is a permutation-free identity; unscramble: a[i] == 1<<i.
    out = [0] * dim
    for i in range(dim):
        out[a[i].bit_length() - 1] = inv[i]
    return out


def compose_maps(outer: Sequence[int], inner: Sequence[int]) -> list[int]:
    """Composite map x -> outer(inner(x)), both given by basis images."""
    return [apply_map(outer, r) for r in inner]


def span_size(vectors: Iterable[int]) -> int:
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    return 1 << len(basis)


def rref_basis(vectors: Iterable[int]) -> tuple[int, ...]:
    """Reduced echelon basis of a span, sorted ascending (canonical)."""
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            if v & (1 << (b.bit_length() - 1)):
                v ^= b
        if v:
            for i, b in enumerate(basis):
                if b & (1 << (v.bit_length() - 1)):
                    basis[i] = b ^ v
            basis.append(v)
    return tuple(sorted(basis))


# ---------------------------------------------------------------------------
# Singular subspaces (5-dimensional, b-orthogonal, generated by q=1 vectors)


@dataclass(frozen=True)
class SingularSubspace:
    """A subspace on which b vanishes and q restricts to a nonzero functional.

    ``basis`` is the canonical reduced-echelon basis (ascending); a q=1
    generating set always exists and is exposed separately.  Such a
    subspace of a 10-dimensional plus-type space contains exactly 16
    vectors with q=1.
    """

    space: F2QuadraticSpace
    basis: tuple[int, ...]

    def __post_init__(self):
        s = self.space
        for i, x in enumerate(self.basis):
            for y in self.basis[i:]:
                if s.b(x, y):
                    raise F2Error("bilinear form does not vanish on the subspace")
        if all(s.q(x) == 0 for x in self.basis):
            raise F2Error("q restricts to zero; no non-isotropic generators exist")

    @property
    def fingerprint(self) -> int:
        key = 0
        for x in self.basis:
            key = (key << self.space.dim) | x
        return key

    def members(self) -> list[int]:
        out = [0]
        for b in self.basis:
            out += [x ^ b for x in out]
        return sorted(out)

    def nonisotropic_members(self) -> list[int]:
        qt = self.space.q_table()
        return [x for x in self.members() if x and qt[x]]

    def singular_generators(self) -> tuple[int, ...]:
        """Lexicographically least q=1 generating set (mutually orthogonal)."""
        gens: list[int] = []
        for x in self.nonisotropic_members():
            if span_size(gens + [x]) > span_size(gens):
                gens.append(x)
                if len(gens) == len(self.basis):
                    return tuple(gens)
        raise AssertionError("internal error: no non-isotropic generating set")


def enumerate_singular_subspaces(space: F2QuadraticSpace) -> list[SingularSubspace]:
    """All maximal b-orthogonal subspaces generated by q=1 vectors.

    Requires a 10-dimensional nondegenerate plus-type space (the only case
    with geometric meaning here); the subspaces are exactly the Lagrangian
    subspaces of b on which q is a *nonzero* linear functional, and there
    are 3^3 * 5 * 17 * 31 = 71145 of them.

    Each subspace is produced exactly once: the recursion builds the
    greedy-minimal basis (equivalently the reduced echelon basis read in
    ascending order), which forces candidates to avoid the pivot bits of
    the partial span.  Candidate sets are carried as bitmasks over all
    2^dim vectors, so each node costs a handful of word operations.
    """
    if space.dim != 10 or not space.is_nondegenerate() or not space.plus_type():
        raise F2Error("singular subspace enumeration expects a 10-dimensional plus-type space")
    return [SingularSubspace(space, basis) for basis in lagrangian_bases(space) if any(space.q(x) for x in basis)]


def lagrangian_bases(space: F2QuadraticSpace) -> list[tuple[int, ...]]:
    """Canonical bases of all maximal totally b-isotropic subspaces."""
    n = space.dim
    half = n // 2
    perp = space.perp_masks()
    full = (1 << (1 << n)) - 1
    # pivot_exclude[p] keeps vectors with bit p clear.
    pivot_exclude = []
    for p in range(n):
        m = 0
        for v in range(1 << n):
            if not (v >> p & 1):
                m |= 1 << v
        pivot_exclude.append(m)
    out: list[tuple[int, ...]] = []
    stack: list[int] = []

    def above_mask(w: int) -> int:
        return full & ~((1 << (w + 1)) - 1)

    def recurse(candidates: int):
        if len(stack) == half:
            out.append(tuple(stack))
            return
        c = candidates
        while c:
            low = c & -c
            w = low.bit_length() - 1
            c ^= low
            nxt = candidates & perp[w] & pivot_exclude[w.bit_length() - 1] & above_mask(w)
            stack.append(w)
            recurse(nxt)
            stack.pop()

    recurse(full & ~1)  # all nonzero vectors (b is alternating, all are isotropic)
    return out


def isotropic_census(space: F2QuadraticSpace) -> tuple[int, int]:
    """(isotropic incl. zero, non-isotropic) counts by enumeration."""
    if space.dim > 30:
        raise F2Error("dimension too large for enumeration")
    return space.isotropic_count()


@dataclass(frozen=True)
class OrthogonalPairs:
    pairs: tuple[tuple[int, int], ...]
    adjacency: dict  # vector -> tuple of orthogonal non-isotropic vectors


def orthogonal_pairs(space: F2QuadraticSpace) -> OrthogonalPairs:
    """Unordered pairs of orthogonal non-isotropic vectors, with their graph.

    Intended for the 4-dimensional minus-type form (10 non-isotropic
    vectors, 15 pairs, Petersen orthogonality graph).
    """
    if space.dim != 4 or space.plus_type():
        raise F2Error("orthogonal pair census expects the 4-dimensional minus-type form")
    nonsing = space.nonisotropic_vectors()
    pairs = tuple(
        (x, y) for i, x in enumerate(nonsing) for y in nonsing[i + 1:] if space.b(x, y) == 0
    )
    adjacency = {
        x: tuple(y for y in nonsing if y != x and space.b(x, y) == 0) for x in nonsing
    }
    return OrthogonalPairs(pairs, adjacency)


# ---------------------------------------------------------------------------
# Isometries and the orthogonal group


def transvection(space: F2QuadraticSpace, a: int) -> list[int]:
    """The orthogonal transvection x -> x + b(x, a) a (q(a) must be 1)."""
    assert space.q(a) == 1
    return [(1 << i) ^ (a if space.b(1 << i, a) else 0) for i in range(space.dim)]


def transvection_permutation(space: F2QuadraticSpace, a: int) -> tuple[int, ...]:
    """The transvection by a as a permutation of all 2^dim vectors."""
    assert space.q(a) == 1
    row = 0
    y = a
    while y:
        low = y & -y
        row ^= space.b_rows[low.bit_length() - 1]
        y ^= low
    return tuple(x ^ a if bin(x & row).count("1") & 1 else x for x in range(1 << space.dim))


def hyperbolic_split(space: F2QuadraticSpace) -> tuple[list[int], str]:
    """Split into 2-dimensional blocks: returns (basis, block string).

    The basis is a list of vector masks b1, b2, b3, b4, ... such that
    consecutive pairs span mutually orthogonal copies of u or v, recorded
    in the returned string.
    """
    if space.dim % 2 or not space.is_nondegenerate():
        raise F2Error("hyperbolic splitting needs a nondegenerate even-dimensional form")
    basis: list[int] = []
    blocks = []
    remaining = [1 << i for i in range(space.dim)]  # basis of current perp space

    def in_span_reduce(v: int, vs: list[int]) -> int:
        for w in vs:
            v = min(v, v ^ w)
        return v

    while remaining:
        x = remaining[0]
        y = next(w for w in remaining[1:] if space.b(x, w))
        if space.q(x) == 1 and space.q(y) == 0:
            x, y = y, x
        if space.q(x) == 0 and space.q(y) == 1:
            y = x ^ y  # make both ends match: q(x+y) = q(x)+q(y)+1
        blocks.append("v" if space.q(x) else "u")
        basis += [x, y]
        new_remaining = []
        for w in remaining:
            w ^= x if space.b(w, y) else 0
            w ^= y if space.b(w, x) else 0
            w = in_span_reduce(w, sorted(new_remaining, reverse=True))
            if w:
                new_remaining.append(w)
        remaining = [w for w in new_remaining if w not in (x, y)]
        assert len(remaining) == space.dim - len(basis)
    return basis, "".join(blocks)


@lru_cache(maxsize=1)
def _uu_vv_witness() -> list[int]:
    """A basis of the u+u space whose transformed form is v+v, found by search."""
    uu = block_space("uu")
    vv = block_space("vv")
    target = (vv.b_rows, vv.q_basis)

    def extend(basis: list[int]) -> list[int] | None:
        if len(basis) == 4:
            t = uu.transform(basis)
            return basis if (t.b_rows, t.q_basis) == target else None
        i = len(basis)
        for cand in range(1, 16):
            if span_size(basis + [cand]) != 1 << (i + 1):
                continue
            if uu.q(cand) != (vv.q_basis >> i & 1):
                continue
            if any(uu.b(cand, basis[j]) != (vv.b_rows[i] >> j & 1) for j in range(i)):
                continue
            res = extend(basis + [cand])
            if res is not None:
                return res
        return None

    found = extend([])
    assert found is not None
    return found


def canonical_split(space: F2QuadraticSpace) -> tuple[list[int], str]:
    """Basis putting the form into u^k or u^(k-1)+v, using v+v = u+u.

    Returns (basis, block string); the block string is "u"*k for plus
    type and "u"*(k-1)+"v" for minus type.
    """
    basis, blocks = hyperbolic_split(space)
    while blocks.count("v") >= 2:
        i = blocks.index("v")
        j = blocks.index("v", i + 1)
        sub = [basis[2 * i], basis[2 * i + 1], basis[2 * j], basis[2 * j + 1]]
        # The v+v -> u+u change of basis, transported along sub.
        w = invert_map(_uu_vv_witness(), 4)
        repl = [apply_map(sub, m) for m in w]
        basis[2 * i], basis[2 * i + 1] = repl[0], repl[1]
        basis[2 * j], basis[2 * j + 1] = repl[2], repl[3]
        blocks = blocks.replace("v", "u", 2)
    order = sorted(range(len(blocks)), key=lambda k: blocks[k])
    basis = [basis[2 * k + off] for k in order for off in (0, 1)]
    blocks = "".join(sorted(blocks))
    check = space.transform(basis)
    assert check == block_space(blocks), "internal error: canonical split failed"
    return basis, blocks


def isometry_witness(a: F2QuadraticSpace, b: F2QuadraticSpace) -> list[int] | None:
    """Basis images of an isometry a -> b, or None if none exists."""
    if a.dim != b.dim:
        return None
    if not (a.is_nondegenerate() and b.is_nondegenerate()):
        raise F2Error("isometry search expects nondegenerate forms")
    sa, ka = canonical_split(a)
    sb, kb = canonical_split(b)
    if ka != kb:
        return None
    # a --sa--> canonical --sb^{-1}--> b; express images of a's basis in b.
    sa_inv = invert_map(sa, a.dim)
    witness = compose_maps(sb, sa_inv)
    assert all(
        a.q(x) == b.q(apply_map(witness, x)) for x in range(1 << a.dim)
    ) if a.dim <= 12 else True
    return witness
