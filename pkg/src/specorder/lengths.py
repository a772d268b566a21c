"""Lengths of specializations, restrict series and dimension.

Lengths are measured in the ambient space: the length between two points is
the longest strict specialization chain joining them, with every point of the
chain allowed to lie anywhere in the space. Generic specializations (``x <-> y``)
contribute nothing, so all computations work on equivalence classes, each
represented by its first point in input order.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import NotASpecializationError, SpaceError
from .space import FiniteSpace, PointSet, _as_mask, iter_bits, popcount


@dataclass(frozen=True)
class RestrictSeries:
    space: FiniteSpace
    chain: tuple[str, ...]

    @property
    def length(self) -> int:
        return len(self.chain) - 1

    def __iter__(self):
        return iter(self.chain)


@dataclass(frozen=True)
class LengthReport:
    value: int
    witness: RestrictSeries | None


def _reps(space: FiniteSpace) -> list[int]:
    return [i for i in range(len(space)) if space.class_mask(i) & -space.class_mask(i) == 1 << i]


def _rep(space: FiniteSpace, i: int) -> int:
    cls = space.class_mask(i)
    return (cls & -cls).bit_length() - 1


def length_table(space: FiniteSpace) -> list[list[int]]:
    """``table[i][j]`` is ``l(points[i], points[j])``, or -1 when ``i -/-> j``.

    Longest-path DP over the strict order of class representatives, processed
    from the most special classes upward.
    """
    cached = space.cache.get("lengths")
    if cached is not None:
        return cached
    n = len(space)
    reps = _reps(space)
    rep_mask = 0
    for r in reps:
        rep_mask |= 1 << r
    # fewer specializations = more special = earlier
    order = sorted(reps, key=lambda r: popcount(space.up[r]))
    rep_table = {r: {} for r in reps}
    for x in order:
        row = rep_table[x]
        strict = space.up[x] & ~space.down[x] & rep_mask
        row[x] = 0
        for y in iter_bits(space.up[x] & rep_mask):
            if y == x:
                continue
            best = 0
            for z in iter_bits(strict & space.down[y]):
                v = rep_table[z][y] + 1
                if v > best:
                    best = v
            row[y] = best
    table = [[-1] * n for _ in range(n)]
    for i in range(n):
        ri = _rep(space, i)
        for j in iter_bits(space.up[i]):
            table[i][j] = rep_table[ri][_rep(space, j)]
    space.cache["lengths"] = table
    return table


def _series(space: FiniteSpace, i: int, j: int) -> RestrictSeries:
    """Witness chain for ``l(points[i], points[j])``, smallest indices first."""
    table = length_table(space)
    if space.up[j] >> i & 1:
        return RestrictSeries(space, (space.points[i],))
    chain = [i]
    cur = i
    remaining = table[i][j]
    while remaining > 1:
        strict = space.up[cur] & ~space.down[cur] & space.down[j]
        for z in iter_bits(strict):
            if _rep(space, z) == z and table[z][j] == remaining - 1:
                chain.append(z)
                cur = z
                break
        remaining -= 1
    chain.append(j)
    return RestrictSeries(space, tuple(space.points[k] for k in chain))


def _require_spec(space: FiniteSpace, x: str, y: str) -> tuple[int, int]:
    i, j = space.idx(x), space.idx(y)
    if not space.up[i] >> j & 1:
        raise NotASpecializationError(x, y)
    return i, j


def is_closest(space: FiniteSpace, x: str, y: str) -> bool:
    i, j = _require_spec(space, x, y)
    for k in range(len(space)):
        if space.up[i] >> k & 1 and space.up[k] >> j & 1:
            if not (space.class_mask(k) >> i & 1 or space.class_mask(k) >> j & 1):
                return False
    return True


def length_between(space: FiniteSpace, x: str, y: str) -> LengthReport:
    i, j = _require_spec(space, x, y)
    return LengthReport(length_table(space)[i][j], _series(space, i, j))


def _best_pair(space: FiniteSpace, mask: int) -> LengthReport:
    table = length_table(space)
    best = None
    for i in iter_bits(mask):
        for j in iter_bits(space.up[i] & mask):
            if best is None or table[i][j] > table[best[0]][best[1]]:
                best = (i, j)
    if best is None:
        return LengthReport(0, None)
    return LengthReport(table[best[0]][best[1]], _series(space, *best))


def length_of_space(space: FiniteSpace) -> LengthReport:
    return _best_pair(space, space.full_mask)


def length_of_subset(space: FiniteSpace, s) -> LengthReport:
    return _best_pair(space, _as_mask(space, s))


def length_of_point(space: FiniteSpace, x: str) -> LengthReport:
    return _best_pair(space, space.up[space.idx(x)])


def point_lengths(space: FiniteSpace) -> list[int]:
    """``l(x)`` for every point, in point order."""
    cached = space.cache.get("point_lengths")
    if cached is None:
        table = length_table(space)
        cached = [max(table[i][j] for j in iter_bits(space.up[i])) for i in range(len(space))]
        space.cache["point_lengths"] = cached
    return cached


def dim_space(space: FiniteSpace, s=None) -> int:
    """Krull dimension of the subspace ``s`` (whole space by default).

    The irreducible closed subsets of a finite subspace are the closures of
    its points taken inside ``s``; the dimension is the longest chain of
    strict inclusions among them. Nothing outside ``s`` is consulted.
    """
    mask = space.full_mask if s is None else _as_mask(space, s)
    sets = sorted({space.up[i] & mask for i in iter_bits(mask)}, key=popcount)
    height: dict[int, int] = {}
    for k, a in enumerate(sets):
        best = 0
        for b in sets[:k]:
            if b != a and b & ~a == 0 and height[b] + 1 > best:
                best = height[b] + 1
        height[a] = best
    return max(height.values(), default=0)


def presentation(space: FiniteSpace) -> RestrictSeries:
    if not len(space):
        raise SpaceError("an empty space has no presentation")
    return length_of_space(space).witness


def validate_restrict_series(series: RestrictSeries) -> bool:
    space, chain = series.space, series.chain
    if not chain or any(p not in space for p in chain):
        return False
    if space.equivalent(chain[0], chain[-1]):
        return len(chain) == 1
    for a, b in zip(chain, chain[1:]):
        if not space.leq(a, b) or space.leq(b, a):
            return False
    return True
