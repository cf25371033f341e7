"""Deterministic Schreier-Sims stabilizer chains for permutation groups.

Permutations on n points are tuples p with p[x] the image of x; products
compose right-to-left, (p * q)(x) = p(q(x)).

The chain is built with the classical deterministic algorithm: every
Schreier generator of every level is sifted through the chain below it,
and nonzero residuals are installed as strong generators.  A strong
generator carries an active range of levels: an original input generator
is active from level 0 down to the level where its sift got stuck, while
the residual of a level-l Schreier generator starts at level l+1 (it is
already a product of level-l generators, so higher levels do not need
it).  Each level keeps watermarks of how many (orbit point, generator)
pairs it has expanded, so no pair is processed twice.

Once construction finishes, the strong generating property holds by
construction and the group order is the product of the orbit lengths.
No randomization is used; results are reproducible.  Base points are the
least moved points, so for groups acting on lexicographically ordered
vectors the base is lexicographic as well.
"""

from __future__ import annotations

from typing import Sequence


def identity_perm(n: int) -> tuple[int, ...]:
    return tuple(range(n))


def compose(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """(p * q)(x) = p(q(x))."""
    return tuple(p[x] for x in q)


def inverse(p: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def is_identity(p: Sequence[int]) -> bool:
    return all(i == x for i, x in enumerate(p))


class _Level:
    __slots__ = ("base", "active", "transversal", "orbit", "points_done", "gens_done")

    def __init__(self, base: int, n: int):
        self.base = base
        self.active: list[tuple[int, ...]] = []
        self.transversal: dict[int, tuple[int, ...]] = {base: identity_perm(n)}
        self.orbit: list[int] = [base]
        self.points_done = 0
        self.gens_done = 0


class StabilizerChain:
    """Base and strong generating set for the group the generators define."""

    def __init__(self, generators: Sequence[Sequence[int]], degree: int | None = None):
        gens = [tuple(g) for g in generators]
        if degree is None:
            if not gens:
                raise ValueError("need generators or an explicit degree")
            degree = len(gens[0])
        self.degree = degree
        self.levels: list[_Level] = []
        for g in gens:
            if len(g) != degree or sorted(g) != list(range(degree)):
                raise ValueError("not a permutation of the right degree")
            self._install(g, 0)

    # -- construction -------------------------------------------------------

    def _sift_from(self, g: tuple[int, ...], start: int):
        """Strip g through levels >= start; return (residual, stuck level)."""
        i = start
        while i < len(self.levels):
            lvl = self.levels[i]
            t = lvl.transversal.get(g[lvl.base])
            if t is None:
                return g, i
            g = compose(inverse(t), g)
            i += 1
        return g, i

    def _install(self, g: tuple[int, ...], top: int):
        """Make g a member of the chain group, active from level `top` down."""
        if is_identity(g):
            return
        g, bottom = self._sift_from(g, top)
        if is_identity(g):
            return
        if bottom == len(self.levels):
            moved = next(x for x in range(self.degree) if g[x] != x)
            self.levels.append(_Level(moved, self.degree))
        for l in range(top, bottom + 1):
            self.levels[l].active.append(g)
        for l in range(bottom, top - 1, -1):
            self._close(l)

    def _close(self, i: int):
        """Extend orbit i and sift all unprocessed Schreier generators."""
        lvl = self.levels[i]
        while True:
            frontier = list(lvl.orbit)
            while frontier:
                x = frontier.pop()
                tx = lvl.transversal[x]
                for s in lvl.active:
                    y = s[x]
                    if y not in lvl.transversal:
                        lvl.transversal[y] = compose(s, tx)
                        lvl.orbit.append(y)
                        frontier.append(y)
            old_points, old_gens = lvl.points_done, lvl.gens_done
            n_points, n_gens = len(lvl.orbit), len(lvl.active)
            if (old_points, old_gens) == (n_points, n_gens):
                return
            lvl.points_done, lvl.gens_done = n_points, n_gens
            for pi in range(n_points):
                x = lvl.orbit[pi]
                tx = lvl.transversal[x]
                for gi in range(n_gens):
                    if pi < old_points and gi < old_gens:
                        continue
                    s = lvl.active[gi]
                    sg = compose(compose(inverse(lvl.transversal[s[x]]), s), tx)
                    if not is_identity(sg):
                        self._install(sg, i + 1)
            # Installing below never touches this level's orbit or active
            # set, but new orbit points may have appeared via the BFS above;
            # loop until the watermarks are stable.

    # -- queries ------------------------------------------------------------

    def order(self) -> int:
        n = 1
        for lvl in self.levels:
            n *= len(lvl.orbit)
        return n

    def contains(self, g: Sequence[int]) -> bool:
        residual, _ = self._sift_from(tuple(g), 0)
        return is_identity(residual)

    def base(self) -> list[int]:
        return [lvl.base for lvl in self.levels]


def group_order(generators: Sequence[Sequence[int]], degree: int | None = None) -> int:
    if not generators:
        return 1
    return StabilizerChain(generators, degree).order()
