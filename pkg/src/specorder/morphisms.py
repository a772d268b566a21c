"""Maps between finite spaces: preservation properties, norms, classifications."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .errors import MapError, NotMonotoneError, SpaceError
from .lengths import dim_space, length_table, point_lengths
from .space import (
    ENUMERATION_LIMIT,
    FiniteSpace,
    PointSet,
    _as_mask,
    closed_subset_masks,
    initial_points,
    irreducible_components,
    iter_bits,
)


@dataclass(frozen=True, eq=False)
class SpaceMap:
    source: FiniteSpace
    target: FiniteSpace
    images: tuple[int, ...]  # target index of each source point

    @classmethod
    def build(cls, source: FiniteSpace, target: FiniteSpace, mapping: Mapping[str, str]) -> SpaceMap:
        extra = set(mapping) - set(source.points)
        if extra:
            raise MapError(f"map mentions points not in the source: {sorted(extra)}")
        images = []
        for p in source.points:
            if p not in mapping:
                raise MapError(f"map is not total: no image for {p!r}")
            q = mapping[p]
            if q not in target:
                raise MapError(f"image {q!r} of {p!r} is not a point of the target")
            images.append(target.index[q])
        return cls(source, target, tuple(images))

    def __call__(self, x: str) -> str:
        return self.target.points[self.images[self.source.idx(x)]]

    def __eq__(self, other):
        if not isinstance(other, SpaceMap):
            return NotImplemented
        return (self.source, self.target, self.images) == (other.source, other.target, other.images)

    def __hash__(self):
        return hash((self.source, self.target, self.images))

    def as_dict(self) -> dict[str, str]:
        return {p: self.target.points[t] for p, t in zip(self.source.points, self.images)}

    def image_mask(self, mask: int) -> int:
        out = 0
        for i in iter_bits(mask):
            out |= 1 << self.images[i]
        return out

    def preimage_mask(self, mask: int) -> int:
        out = 0
        for i, t in enumerate(self.images):
            if mask >> t & 1:
                out |= 1 << i
        return out

    def compose(self, after: SpaceMap) -> SpaceMap:
        """``after`` applied to the result of ``self``."""
        if after.source != self.target:
            raise MapError("maps are not composable")
        return SpaceMap(self.source, after.target, tuple(after.images[t] for t in self.images))


@dataclass(frozen=True)
class Check:
    """Boolean outcome plus the points that witness a failure."""

    holds: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.holds


@dataclass(frozen=True)
class NormReport:
    value: Fraction
    witness_pair: tuple[str, str] | None
    bounded: bool = True
    beta: Fraction | None = None


@dataclass(frozen=True)
class LevelReport:
    level_separated: bool
    level_reduced: bool
    level_mixed: bool
    separated_witness: tuple[str, str] | None = None
    reduced_witness: tuple[str, str] | None = None


@dataclass(frozen=True)
class InjectivityVerdict:
    applicable: bool
    reason: str | None
    injective: bool
    length_preserving: bool
    level_separated: bool
    theorem_consistent: bool
    witness: tuple | None = None


@dataclass(frozen=True)
class DimEqualityVerdict:
    applicable: bool
    reason: str | None
    length_preserving: bool
    chain_lifting: bool
    dims_equal: bool
    proposition_consistent: bool
    dims: tuple[int, int] = (0, 0)


@dataclass(frozen=True)
class SurjectiveNormVerdict:
    applicable: bool
    surjective: bool
    dims: tuple[int, int]
    norm: Fraction
    norm_ge_one: bool
    consistent: bool


@dataclass(frozen=True)
class ClassificationReport:
    specialization_preserving: bool
    ip_preserving: bool | None
    condition_star: bool | None = None
    length_preserving: bool | None = None
    asymptotic: bool | None = None
    null: bool | None = None
    level_separated: bool | None = None
    level_reduced: bool | None = None
    level_mixed: bool | None = None
    injective: bool = False
    chain_lifting: bool | None = None
    counterexamples: dict[str, tuple] = field(default_factory=dict)


def _pair(space: FiniteSpace, i: int, j: int) -> tuple[str, str]:
    return space.points[i], space.points[j]


def is_specialization_preserving(f: SpaceMap) -> Check:
    src, tgt = f.source, f.target
    for i in range(len(src)):
        for j in iter_bits(src.up[i]):
            if not tgt.up[f.images[i]] >> f.images[j] & 1:
                return Check(False, _pair(src, i, j))
    return Check(True)


def _require_monotone(f: SpaceMap) -> None:
    check = is_specialization_preserving(f)
    if not check:
        raise NotMonotoneError(check.witness)


def is_ip_preserving(f: SpaceMap, limit: int = ENUMERATION_LIMIT) -> Check:
    """Every closed ``U`` and initial ``x0`` of ``U``: ``f(x0)`` is initial in the closure of its image.

    ``x0`` is initial in ``U`` exactly when it is the generic point of the
    irreducible piece ``Sp(x0)`` of ``U``; the requirement is that ``f(x0)``
    is the generic point of the closure of ``f(Sp(x0))``, i.e. that closure
    is irreducible and ``f(x0)`` specializes to all of it.
    """
    src, tgt = f.source, f.target
    done: set[int] = set()
    for u in closed_subset_masks(src, limit):
        for i in iter_bits(initial_points(src, PointSet(src, u)).mask):
            if i in done:
                continue
            done.add(i)
            piece = src.up[i] & u
            image_closure = tgt.closure_mask(f.image_mask(piece))
            if image_closure & ~tgt.up[f.images[i]]:
                return Check(False, (src.names(u), src.points[i]))
    return Check(True)


def sp_connected(space: FiniteSpace, x: str, y: str) -> bool:
    return space.leq(x, y) or space.leq(y, x)


def _chain_witness(space: FiniteSpace, mask: int) -> tuple[str, str] | None:
    for i in iter_bits(mask):
        for j in iter_bits(mask):
            if i < j and not (space.up[i] >> j & 1 or space.up[j] >> i & 1):
                return _pair(space, i, j)
    return None


def sp_connected_set(space: FiniteSpace, s) -> bool:
    """Every two points of ``s`` are Sp-connected (``s`` is a chain)."""
    mask = _as_mask(space, s)
    if not mask:
        raise SpaceError("Sp-connectedness of the empty set is undefined")
    return _chain_witness(space, mask) is None


def satisfies_condition_star(f: SpaceMap) -> Check:
    src, tgt = f.source, f.target
    for i in range(len(src)):
        sp_fx = tgt.up[f.images[i]]
        if f.image_mask(src.up[i]) == sp_fx:
            continue
        if _chain_witness(src, f.preimage_mask(sp_fx)) is None:
            continue
        return Check(False, (src.points[i],))
    return Check(True)


def norm(f: SpaceMap) -> NormReport:
    _require_monotone(f)
    src = f.source
    if dim_space(src) == 0:
        return NormReport(Fraction(0), None, True, Fraction(0))
    ls, lt = length_table(src), length_table(f.target)
    best = None
    best_pair = None
    for i in range(len(src)):
        for j in iter_bits(src.up[i]):
            if ls[i][j] > 0:
                r = Fraction(lt[f.images[i]][f.images[j]], ls[i][j])
                if best is None or r > best:
                    best, best_pair = r, (i, j)
    return NormReport(best, _pair(src, *best_pair), True, best)


def is_length_preserving(f: SpaceMap) -> Check:
    _require_monotone(f)
    src = f.source
    ls, lt = length_table(src), length_table(f.target)
    for i in range(len(src)):
        for j in iter_bits(src.up[i]):
            if ls[i][j] != lt[f.images[i]][f.images[j]]:
                return Check(False, _pair(src, i, j))
    return Check(True)


def classify_levels(f: SpaceMap) -> LevelReport:
    _require_monotone(f)
    src, tgt = f.source, f.target
    lengths = point_lengths(src)
    sep_witness = red_witness = None
    for i in range(len(src)):
        for j in range(i + 1, len(src)):
            if src.up[i] >> j & 1 or src.up[j] >> i & 1 or lengths[i] != lengths[j]:
                continue
            a, b = f.images[i], f.images[j]
            connected = bool(tgt.up[a] >> b & 1 or tgt.up[b] >> a & 1)
            if connected and sep_witness is None:
                sep_witness = _pair(src, i, j)
            if not connected and red_witness is None:
                red_witness = _pair(src, i, j)
    separated = sep_witness is None
    reduced = red_witness is None
    return LevelReport(separated, reduced, not separated and not reduced, sep_witness, red_witness)


def is_injective(f: SpaceMap) -> Check:
    seen: dict[int, int] = {}
    for i, t in enumerate(f.images):
        if t in seen:
            return Check(False, _pair(f.source, seen[t], i))
        seen[t] = i
    return Check(True)


def is_surjective(f: SpaceMap) -> bool:
    return len(set(f.images)) == len(f.target)


def is_irreducible_space(space: FiniteSpace) -> bool:
    return len(irreducible_components(space)) == 1


def injectivity_criterion(f: SpaceMap) -> InjectivityVerdict:
    """Compare injectivity with "length-preserving and level-separated".

    Both sides are always evaluated; ``applicable`` records whether the
    hypotheses (irreducible source and target, Condition (*)) hold.
    """
    _require_monotone(f)
    reason = None
    if not is_irreducible_space(f.source):
        reason = "source is not irreducible"
    elif not is_irreducible_space(f.target):
        reason = "target is not irreducible"
    elif not satisfies_condition_star(f):
        reason = "Condition (*) fails"
    inj = is_injective(f)
    lp = is_length_preserving(f)
    levels = classify_levels(f)
    rhs = lp.holds and levels.level_separated
    return InjectivityVerdict(
        applicable=reason is None,
        reason=reason,
        injective=inj.holds,
        length_preserving=lp.holds,
        level_separated=levels.level_separated,
        theorem_consistent=inj.holds == rhs,
        witness=inj.witness or lp.witness or levels.separated_witness,
    )


def _class_rep(space: FiniteSpace, i: int) -> int:
    cls = space.class_mask(i)
    return (cls & -cls).bit_length() - 1


def is_chain_lifting(f: SpaceMap, scope: str = "target") -> Check:
    """Every restrict series of the target lifts to one of the source through ``f``.

    With ``scope="image"`` only series inside the closure of ``f``'s image are
    required to lift. Series are followed along maximal chains of classes by a
    depth-first walk that carries the set of source points ending a lift of
    the current prefix; any prefix with no lift is returned as the witness.
    """
    _require_monotone(f)
    src, tgt = f.source, f.target
    if scope == "target":
        region = tgt.full_mask
    elif scope == "image":
        region = tgt.closure_mask(f.image_mask(src.full_mask))
    else:
        raise ValueError(f"unknown scope {scope!r}")
    reps = [i for i in iter_bits(region) if _class_rep(tgt, i) == i]
    rep_mask = sum(1 << r for r in reps)
    # source points lying over each target class
    over = {r: f.preimage_mask(tgt.class_mask(r)) for r in reps}

    def covers(y: int) -> list[int]:
        strict = tgt.up[y] & ~tgt.down[y] & rep_mask
        out = []
        for z in iter_bits(strict):
            between = tgt.up[y] & tgt.down[z] & ~tgt.class_mask(y) & ~tgt.class_mask(z)
            if not between & region:
                out.append(z)
        return out

    seen: set[tuple[int, int]] = set()

    def walk(y: int, ends: int, prefix: list[int]):
        if not ends:
            return prefix
        if (y, ends) in seen:
            return None
        seen.add((y, ends))
        for z in covers(y):
            nxt = 0
            for x in iter_bits(over[z]):
                if src.down[x] & ~src.class_mask(x) & ends:
                    nxt |= 1 << x
            bad = walk(z, nxt, prefix + [z])
            if bad is not None:
                return bad
        return None

    for y in reps:
        if tgt.down[y] & region & ~tgt.class_mask(y):
            continue  # not minimal in the region
        bad = walk(y, over[y], [y])
        if bad is not None:
            return Check(False, tuple(tgt.points[k] for k in bad))
    return Check(True)


def dim_equality_check(f: SpaceMap) -> DimEqualityVerdict:
    _require_monotone(f)
    reason = None
    if not is_irreducible_space(f.source):
        reason = "source is not irreducible"
    elif not is_irreducible_space(f.target):
        reason = "target is not irreducible"
    lp = is_length_preserving(f).holds
    cl = is_chain_lifting(f).holds
    dims = (dim_space(f.source), dim_space(f.target))
    equal = dims[0] == dims[1]
    return DimEqualityVerdict(
        applicable=reason is None,
        reason=reason,
        length_preserving=lp,
        chain_lifting=cl,
        dims_equal=equal,
        proposition_consistent=not (lp and cl) or equal,
        dims=dims,
    )


def check_surjective_norm(f: SpaceMap) -> SurjectiveNormVerdict:
    dims = (dim_space(f.source), dim_space(f.target))
    surj = is_surjective(f)
    value = norm(f).value
    applicable = surj and dims[0] == dims[1]
    ge = value >= 1
    return SurjectiveNormVerdict(applicable, surj, dims, value, ge, not applicable or ge)


def classify(f: SpaceMap, limit: int = ENUMERATION_LIMIT) -> ClassificationReport:
    """Every flag available for ``f``; discontinuous maps get the map-level ones only."""
    counter: dict[str, tuple] = {}
    spec = is_specialization_preserving(f)
    ip = is_ip_preserving(f, limit) if len(f.source) <= limit else None
    inj = is_injective(f)
    if not spec:
        counter["specialization_preserving"] = spec.witness
    if ip is not None and not ip:
        counter["ip_preserving"] = ip.witness
    if not inj:
        counter["injective"] = inj.witness
    if not spec:
        return ClassificationReport(
            specialization_preserving=False,
            ip_preserving=None if ip is None else ip.holds,
            injective=inj.holds,
            counterexamples=counter,
        )
    star = satisfies_condition_star(f)
    lp = is_length_preserving(f)
    nr = norm(f)
    levels = classify_levels(f)
    lifting = is_chain_lifting(f)
    for key, check in (("condition_star", star), ("length_preserving", lp), ("chain_lifting", lifting)):
        if not check:
            counter[key] = check.witness
    asymptotic = nr.value == 1
    null = nr.value == 0
    if not asymptotic:
        counter["asymptotic"] = nr.witness_pair or ()
    if not null:
        counter["null"] = nr.witness_pair
    if not levels.level_separated:
        counter["level_separated"] = levels.separated_witness
    if not levels.level_reduced:
        counter["level_reduced"] = levels.reduced_witness
    if not levels.level_mixed:
        counter["level_mixed"] = ()
    return ClassificationReport(
        specialization_preserving=True,
        ip_preserving=None if ip is None else ip.holds,
        condition_star=star.holds,
        length_preserving=lp.holds,
        asymptotic=asymptotic,
        null=null,
        level_separated=levels.level_separated,
        level_reduced=levels.level_reduced,
        level_mixed=levels.level_mixed,
        injective=inj.holds,
        chain_lifting=lifting.holds,
        counterexamples=counter,
    )
