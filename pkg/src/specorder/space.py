"""Finite spaces represented by their specialization preorder.

A finite topological space is determined by its specialization preorder:
``x -> y`` iff ``y`` lies in the closure of ``{x}``. Closed sets are exactly
the subsets closed under specialization, so everything here is computed on
bitmasks over the point order given at construction.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import InconsistencyError, SizeLimitError, SpaceError, UnknownPointError

#: default point-count guard for closed-subset enumeration
ENUMERATION_LIMIT = 16


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True, eq=False)
class FiniteSpace:
    """Named points with a reflexive-transitive specialization relation.

    ``up[i]`` is the bitmask of ``Sp(points[i])`` and ``down[i]`` the bitmask
    of ``Gen(points[i])``. Build instances with :func:`build_space`.
    """

    points: tuple[str, ...]
    up: tuple[int, ...]
    name: str = ""
    down: tuple[int, ...] = field(init=False, repr=False)
    index: dict[str, int] = field(init=False, repr=False)
    # memo for derived tables (lengths, covers); never part of equality
    cache: dict = field(init=False, repr=False)

    def __post_init__(self):
        n = len(self.points)
        down = [0] * n
        for i, m in enumerate(self.up):
            for j in iter_bits(m):
                down[j] |= 1 << i
        object.__setattr__(self, "down", tuple(down))
        object.__setattr__(self, "index", {p: i for i, p in enumerate(self.points)})
        object.__setattr__(self, "cache", {})

    def __eq__(self, other):
        if not isinstance(other, FiniteSpace):
            return NotImplemented
        return self.points == other.points and self.up == other.up

    def __hash__(self):
        return hash((self.points, self.up))

    def __len__(self):
        return len(self.points)

    def __contains__(self, point):
        return point in self.index

    @property
    def full_mask(self) -> int:
        return (1 << len(self.points)) - 1

    def idx(self, point: str) -> int:
        try:
            return self.index[point]
        except KeyError:
            raise UnknownPointError(point) from None

    def leq(self, x: str, y: str) -> bool:
        """True iff ``x -> y``, i.e. ``y`` is in the closure of ``x``."""
        return bool(self.up[self.idx(x)] >> self.idx(y) & 1)

    def equivalent(self, x: str, y: str) -> bool:
        return self.leq(x, y) and self.leq(y, x)

    def arrows(self) -> list[tuple[str, str]]:
        """All non-reflexive pairs of the closed relation, in point order."""
        return [
            (self.points[i], self.points[j])
            for i, m in enumerate(self.up)
            for j in iter_bits(m)
            if i != j
        ]

    def subset(self, names: Iterable[str]) -> PointSet:
        mask = 0
        for p in names:
            mask |= 1 << self.idx(p)
        return PointSet(self, mask)

    def whole(self) -> PointSet:
        return PointSet(self, self.full_mask)

    def names(self, mask: int) -> tuple[str, ...]:
        return tuple(self.points[i] for i in iter_bits(mask))

    def closure_mask(self, mask: int) -> int:
        out = 0
        for i in iter_bits(mask):
            out |= self.up[i]
        return out

    def class_mask(self, i: int) -> int:
        """Bitmask of the points ``x`` with ``x <-> points[i]``."""
        return self.up[i] & self.down[i]


@dataclass(frozen=True)
class PointSet:
    """A subset of a space's points, iterated in the space's point order."""

    space: FiniteSpace
    mask: int

    def __iter__(self):
        return iter(self.space.names(self.mask))

    def __len__(self):
        return popcount(self.mask)

    def __contains__(self, point):
        i = self.space.index.get(point)
        return i is not None and bool(self.mask >> i & 1)

    def __repr__(self):
        return "{" + ", ".join(self) + "}"

    @property
    def names(self) -> tuple[str, ...]:
        return self.space.names(self.mask)

    def __le__(self, other: PointSet) -> bool:
        return self.mask & ~other.mask == 0


@dataclass(frozen=True)
class UipVerdict:
    holds: bool
    witness: PointSet | None = None
    method: str = "enumerated"  # or "fast" when enumeration was refused
    distinctness_fired: bool = False


def build_space(
    points: Sequence[str],
    arrows: Iterable[tuple[str, str]] = (),
    name: str = "",
) -> FiniteSpace:
    """Close the generating arrows reflexively and transitively."""
    points = tuple(points)
    index: dict[str, int] = {}
    for i, p in enumerate(points):
        if p in index:
            raise SpaceError(f"duplicate point id {p!r}")
        index[p] = i
    up = [1 << i for i in range(len(points))]
    for a, b in arrows:
        for p in (a, b):
            if p not in index:
                raise UnknownPointError(p)
        up[index[a]] |= 1 << index[b]
    n = len(points)
    # Warshall on bitmask rows
    for k in range(n):
        bit = 1 << k
        row = up[k]
        for i in range(n):
            if up[i] & bit:
                up[i] |= row
    return FiniteSpace(points, tuple(up), name)


def _as_mask(space: FiniteSpace, s) -> int:
    if isinstance(s, PointSet):
        return s.mask
    if isinstance(s, int):
        return s
    return space.subset(s).mask


def sp(space: FiniteSpace, x: str) -> PointSet:
    return PointSet(space, space.up[space.idx(x)])


def gen(space: FiniteSpace, x: str) -> PointSet:
    return PointSet(space, space.down[space.idx(x)])


def closure(space: FiniteSpace, s) -> PointSet:
    return PointSet(space, space.closure_mask(_as_mask(space, s)))


def is_t0(space: FiniteSpace) -> bool:
    return all(space.class_mask(i) == 1 << i for i in range(len(space)))


def t0_quotient(space: FiniteSpace) -> tuple[FiniteSpace, dict[str, str]]:
    """Collapse generic specializations; each class is named by its first point."""
    reps: list[int] = []
    rep_of: dict[str, str] = {}
    for i, p in enumerate(space.points):
        cls = space.class_mask(i)
        first = (cls & -cls).bit_length() - 1
        rep_of[p] = space.points[first]
        if first == i:
            reps.append(i)
    arrows = [
        (space.points[a], space.points[b])
        for a in reps
        for b in reps
        if a != b and space.up[a] >> b & 1
    ]
    quotient = build_space([space.points[i] for i in reps], arrows, space.name)
    return quotient, rep_of


def is_closed(space: FiniteSpace, s) -> bool:
    mask = _as_mask(space, s)
    return space.closure_mask(mask) == mask


def irreducible_components(space: FiniteSpace) -> list[PointSet]:
    comps = []
    seen = set()
    for i in range(len(space)):
        # minimal class: every generalization is equivalent
        if space.down[i] == space.class_mask(i) and space.up[i] not in seen:
            seen.add(space.up[i])
            comps.append(PointSet(space, space.up[i]))
    return comps


def initial_points(space: FiniteSpace, s=None) -> PointSet:
    mask = space.full_mask if s is None else _as_mask(space, s)
    out = 0
    for i in iter_bits(mask):
        if space.down[i] & mask & ~space.up[i] == 0:
            out |= 1 << i
    return PointSet(space, out)


def final_points(space: FiniteSpace, s=None) -> PointSet:
    mask = space.full_mask if s is None else _as_mask(space, s)
    out = 0
    for i in iter_bits(mask):
        if space.up[i] & mask & ~space.down[i] == 0:
            out |= 1 << i
    return PointSet(space, out)


def generic_points(space: FiniteSpace) -> PointSet:
    return initial_points(space)


def closed_points(space: FiniteSpace) -> PointSet:
    """Points ``x`` with ``Sp(x) == {x}``."""
    out = 0
    for i in range(len(space)):
        if space.up[i] == 1 << i:
            out |= 1 << i
    return PointSet(space, out)


def closed_subset_masks(space: FiniteSpace, limit: int | None = ENUMERATION_LIMIT) -> Iterator[int]:
    """Yield every closed subset (as a bitmask), including the empty set."""
    n = len(space)
    if limit is not None and n > limit:
        raise SizeLimitError(f"closed-subset enumeration refused: {n} points > limit {limit}")

    def walk(i: int, inside: int, outside: int):
        while i < n and (inside | outside) >> i & 1:
            i += 1
        if i == n:
            yield inside
            return
        yield from walk(i + 1, inside | space.up[i], outside)
        yield from walk(i + 1, inside, outside | space.down[i])

    yield from walk(0, 0, 0)


def is_irreducible(space: FiniteSpace, s) -> bool:
    """Nonempty and every nonempty open subset of ``s`` is dense in ``s``.

    In a finite space the smallest open neighbourhood of ``x`` in the subspace
    ``s`` is ``Gen(x) & s``, so density only has to be checked for those.
    """
    mask = _as_mask(space, s)
    if not mask:
        return False
    for i in iter_bits(mask):
        if space.closure_mask(space.down[i] & mask) & mask != mask:
            return False
    return True


def has_uip(space: FiniteSpace, limit: int = ENUMERATION_LIMIT) -> UipVerdict:
    fast_holds = is_t0(space)
    fast_witness = None
    if not fast_holds:
        for i in range(len(space)):
            if space.class_mask(i) != 1 << i:
                fast_witness = PointSet(space, space.up[i])
                break
    if len(space) > limit:
        return UipVerdict(fast_holds, fast_witness, method="fast")

    witness = None
    fired = False
    owner: dict[int, int] = {}
    for u in closed_subset_masks(space, limit):
        if not is_irreducible(space, u):
            continue
        inits = initial_points(space, u).mask
        if popcount(inits) != 1:
            if witness is None:
                witness = PointSet(space, u)
            continue
        if inits in owner and owner[inits] != u:
            fired = True
            if witness is None:
                witness = PointSet(space, u)
        owner.setdefault(inits, u)
    holds = witness is None
    if holds != fast_holds:
        raise InconsistencyError(
            f"(UIP) enumeration says {holds} but T0 criterion says {fast_holds}"
        )
    return UipVerdict(holds, witness, method="enumerated", distinctness_fired=fired)
