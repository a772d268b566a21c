"""Named fixtures plus exhaustive and random generators of spaces and maps."""
from __future__ import annotations

import hashlib
import itertools
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

from .errors import GenerationError, SizeLimitError, SpecOrderError
from .morphisms import SpaceMap, is_irreducible_space
from .space import FiniteSpace, build_space, iter_bits

MAX_POINTS = 64
MAX_ENUMERATION = 5
MAP_GUARD = 10**6

# ---------------------------------------------------------------- fixtures


def _letters(n: int) -> list[str]:
    if n <= 26:
        return [chr(ord("a") + i) for i in range(n)]
    return [f"a{i}" for i in range(n)]


def antichain(n: int) -> FiniteSpace:
    return build_space(_letters(n), name=f"antichain({n})")


def chain(n: int) -> FiniteSpace:
    pts = [f"x{i}" for i in range(n + 1)]
    return build_space(pts, zip(pts, pts[1:]), name=f"chain({n})")


def v_tree() -> FiniteSpace:
    return build_space(["r", "u", "v"], [("r", "u"), ("r", "v")], name="v_tree")


def _tag(base: str, i, single: bool) -> str:
    return base if single else f"{base}{i}"


def spec_kt(n: int) -> FiniteSpace:
    """Generic point of Spec k[t] and the closed points (t), (t-1), ..., (t-n+1)."""
    closed = [_tag("p", i, n == 1) for i in range(n)]
    return build_space(["e1", *closed], [("e1", p) for p in closed], name=f"spec_kt({n})")


def spec_kst(n: int) -> FiniteSpace:
    """Spec k[s,t]: (0), the lines (t-i) and (s-j), the points (s-j, t-i)."""
    single = n == 1
    ht = [_tag("ht", i, single) for i in range(n)]
    hs = [_tag("hs", j, single) for j in range(n)]
    pts = ["e2", *ht, *hs]
    arrows = [("e2", h) for h in ht + hs]
    for i in range(n):
        for j in range(n):
            m = "m" if single else f"m{i}_{j}"
            pts.append(m)
            arrows += [(ht[i], m), (hs[j], m)]
    return build_space(pts, arrows, name=f"spec_kst({n})")


def _primes(n: int) -> list[int]:
    out = []
    k = 2
    while len(out) < n:
        if all(k % p for p in out):
            out.append(k)
        k += 1
    return out


def spec_z(n: int) -> FiniteSpace:
    closed = [f"p{p}" for p in _primes(n)]
    return build_space(["z0", *closed], [("z0", p) for p in closed], name=f"spec_z({n})")


def spec_zt(n: int, m: int) -> FiniteSpace:
    """Spec Z[t]: (0), primes (p), polynomials (t-i), and maximal ideals (p, t-i)."""
    primes = [f"p{p}" for p in _primes(n)]
    polys = [f"t{i}" for i in range(m)]
    pts = ["g", *primes, *polys]
    arrows = [("g", h) for h in primes + polys]
    for p in primes:
        for t in polys:
            pts.append(p + t)
            arrows += [(p, p + t), (t, p + t)]
    return build_space(pts, arrows, name=f"spec_zt({n},{m})")


def proj_kst_kt(n: int = 1) -> SpaceMap:
    """Contraction of primes along k[t] -> k[s,t]."""
    src, tgt = spec_kst(n), spec_kt(n)
    single = n == 1
    mapping = {"e2": "e1"}
    for i in range(n):
        mapping[_tag("ht", i, single)] = _tag("p", i, single)
        mapping[_tag("hs", i, single)] = "e1"
        for j in range(n):
            mapping["m" if single else f"m{i}_{j}"] = _tag("p", i, single)
    return SpaceMap.build(src, tgt, mapping)


def embed_kt_zt(n: int = 1, m: int = 1) -> SpaceMap:
    """Contraction along Z[t] -> Q[t]: (0) to (0), (t-i) to its primitive part (t-i)."""
    src, tgt = spec_kt(m), spec_zt(n, m)
    mapping = {"e1": "g"}
    for i in range(m):
        mapping[_tag("p", i, m == 1)] = f"t{i}"
    return SpaceMap.build(src, tgt, mapping)


def const_map(target_point: str) -> SpaceMap:
    src, tgt = chain(2), chain(2)
    if target_point not in tgt:
        raise SpecOrderError(f"const_map target must be one of {list(tgt.points)}")
    return SpaceMap.build(src, tgt, {p: target_point for p in src.points})


@dataclass(frozen=True)
class Fixture:
    name: str
    params: str
    builder: Callable
    provenance: str


FIXTURES: dict[str, Fixture] = {
    f.name: f
    for f in [
        Fixture("antichain", "(n)", antichain, "Example 1.1: Artinian scheme, every point initial and final"),
        Fixture("chain", "(n)", chain, "chain of n specializations"),
        Fixture("spec_kt", "(n)", spec_kt, "truncation of Spec k[t]"),
        Fixture("spec_kst", "(n)", spec_kst, "truncation of Spec k[s,t]"),
        Fixture("spec_z", "(n)", spec_z, "truncation of Spec Z"),
        Fixture("spec_zt", "(n,m)", spec_zt, "truncation of Spec Z[t]"),
        Fixture("v_tree", "", v_tree, "one root, two leaves"),
        Fixture("proj_kst_kt", "[(n)]", proj_kst_kt, "Example 3.2(ii): Spec k[s,t] -> Spec k[t], norm 1"),
        Fixture(
            "embed_kt_zt",
            "[(n,m)]",
            embed_kt_zt,
            "Example 3.2(iii): Spec Q[t] -> Spec Z[t] (claimed norm 2; truncation computes its own)",
        ),
        Fixture("const_map", "(target_point)", const_map, "Example 3.2(i): constant map on chain(2), norm 0"),
    ]
}

_ID = re.compile(r"^\s*([a-z_]+)\s*(?:\((.*)\))?\s*$")


def parse_fixture_id(fixture_id: str) -> tuple[str, list]:
    m = _ID.match(fixture_id)
    if not m or m.group(1) not in FIXTURES:
        raise SpecOrderError(f"unknown fixture id {fixture_id!r}")
    name, raw = m.group(1), m.group(2)
    args: list = []
    if raw is not None and raw.strip():
        for tok in raw.split(","):
            tok = tok.strip()
            args.append(int(tok) if re.fullmatch(r"-?\d+", tok) else tok)
    return name, args


def _check_bounds(name: str, args: list) -> None:
    ints = [a for a in args if isinstance(a, int)]
    if any(a < 1 for a in ints):
        raise SpecOrderError(f"{name}: parameters must be >= 1")
    total = {
        "antichain": lambda n: n,
        "chain": lambda n: n + 1,
        "spec_kt": lambda n: n + 1,
        "spec_kst": lambda n: 1 + 2 * n + n * n,
        "spec_z": lambda n: n + 1,
        "spec_zt": lambda n, m: 1 + n + m + n * m,
        "proj_kst_kt": lambda n=1: 1 + 2 * n + n * n,
        "embed_kt_zt": lambda n=1, m=1: 1 + n + m + n * m,
    }.get(name)
    if total is not None:
        try:
            size = total(*ints)
        except TypeError:
            raise SpecOrderError(f"{name}: wrong number of parameters") from None
        if size > MAX_POINTS:
            raise SpecOrderError(f"{name}: {size} points exceeds the {MAX_POINTS}-point bound")


def build_fixture(fixture_id: str) -> FiniteSpace | SpaceMap:
    name, args = parse_fixture_id(fixture_id)
    _check_bounds(name, args)
    try:
        return FIXTURES[name].builder(*args)
    except TypeError:
        raise SpecOrderError(f"{name}: wrong parameters {args}") from None


# ---------------------------------------------------------- enumeration


def _ideals(up: list[int], down: list[int]) -> Iterator[int]:
    """All subsets closed under ``up`` (pass the masks swapped for down-sets)."""
    n = len(up)

    def walk(i, inside, outside):
        while i < n and (inside | outside) >> i & 1:
            i += 1
        if i == n:
            yield inside
            return
        yield from walk(i + 1, inside | up[i], outside)
        yield from walk(i + 1, inside, outside | down[i])

    yield from walk(0, 0, 0)


def _extensions(up: list[int], t0_only: bool) -> Iterator[list[int]]:
    k = len(up)
    down = [0] * k
    for i, m in enumerate(up):
        for j in iter_bits(m):
            down[j] |= 1 << i
    bit = 1 << k
    for gens in _ideals(down, up):  # generalizations of the new point
        for specs in _ideals(up, down):  # specializations of the new point
            if gens & specs:
                continue
            if any(specs & ~up[a] for a in iter_bits(gens)):
                continue
            new = [m | bit if gens >> i & 1 else m for i, m in enumerate(up)]
            new.append(bit | specs)
            yield new
    if not t0_only:
        seen = set()
        for c in range(k):
            cls = up[c] & down[c]
            if cls in seen:
                continue
            seen.add(cls)
            new = [m | bit if m >> c & 1 else m for m in up]
            new.append(up[c] | bit)
            yield new


def enumerate_spaces(n: int, t0_only: bool = True) -> Iterator[FiniteSpace]:
    """Every labeled preorder (poset when ``t0_only``) on points ``p0 .. p{n-1}``."""
    if n > MAX_ENUMERATION:
        raise SizeLimitError(f"exhaustive enumeration limited to {MAX_ENUMERATION} points")
    names = tuple(f"p{i}" for i in range(n))

    def grow(up: list[int]):
        if len(up) == n:
            yield FiniteSpace(names, tuple(up), "")
            return
        for ext in _extensions(up, t0_only):
            yield from grow(ext)

    yield from grow([])


def canonical_form(space: FiniteSpace) -> tuple:
    """Relabeling-invariant key (brute force over permutations; small spaces only)."""
    n = len(space)
    best = None
    for perm in itertools.permutations(range(n)):
        key = tuple(
            sum(1 << perm[j] for j in iter_bits(space.up[i])) for i in sorted(range(n), key=lambda i: perm[i])
        )
        if best is None or key < best:
            best = key
    return (n, best)


def enumerate_spaces_up_to_iso(n: int, t0_only: bool = True) -> list[FiniteSpace]:
    out = {}
    for s in enumerate_spaces(n, t0_only):
        out.setdefault(canonical_form(s), s)
    return list(out.values())


def enumerate_monotone_maps(src: FiniteSpace, tgt: FiniteSpace, guard: int = MAP_GUARD) -> Iterator[SpaceMap]:
    """All specialization-preserving total maps, by backtracking in a linear extension."""
    if len(tgt) ** len(src) > guard:
        raise SizeLimitError(f"{len(tgt)}^{len(src)} candidate maps exceed the guard {guard}")
    order = sorted(range(len(src)), key=lambda i: bin(src.down[i]).count("1"))
    images = [-1] * len(src)

    def assign(k):
        if k == len(order):
            yield SpaceMap(src, tgt, tuple(images))
            return
        x = order[k]
        for t in range(len(tgt)):
            ok = True
            for w in order[:k]:
                if src.up[w] >> x & 1 and not tgt.up[images[w]] >> t & 1:
                    ok = False
                    break
                if src.up[x] >> w & 1 and not tgt.up[t] >> images[w] & 1:
                    ok = False
                    break
            if ok:
                images[x] = t
                yield from assign(k + 1)
        images[x] = -1

    yield from assign(0)


def enumerate_maps(src: FiniteSpace, tgt: FiniteSpace, guard: int = MAP_GUARD) -> Iterator[SpaceMap]:
    """All total maps, monotone or not."""
    if len(tgt) ** len(src) > guard:
        raise SizeLimitError(f"{len(tgt)}^{len(src)} candidate maps exceed the guard {guard}")
    for images in itertools.product(range(len(tgt)), repeat=len(src)):
        yield SpaceMap(src, tgt, images)


# -------------------------------------------------------------- random


def derive_seed(seed: int, *index: int) -> int:
    """Independent 64-bit seed for ``(seed, index...)``; stable across platforms."""
    data = ",".join(str(v) for v in (seed, *index)).encode()
    return int.from_bytes(hashlib.blake2b(data, digest_size=8).digest(), "little")


@dataclass(frozen=True)
class GeneratorConfig:
    seed: int = 0
    num_points: int = 8
    edge_probability: Fraction = Fraction(1, 4)
    require_t0: bool = True
    require_irreducible: bool = False
    max_retries: int = 1000

    def __post_init__(self):
        object.__setattr__(self, "edge_probability", Fraction(self.edge_probability))
        if not 0 <= self.num_points <= MAX_POINTS:
            raise SpecOrderError(f"num_points must be in [0, {MAX_POINTS}]")
        if not 0 <= self.edge_probability <= 1:
            raise SpecOrderError("edge_probability must be in [0, 1]")


def _coin(rng: random.Random, p: Fraction) -> bool:
    return rng.randrange(p.denominator) < p.numerator


def random_space(cfg: GeneratorConfig) -> FiniteSpace:
    n = cfg.num_points
    names = [f"p{i}" for i in range(n)]
    for attempt in range(cfg.max_retries):
        rng = random.Random(derive_seed(cfg.seed, attempt))
        arrows = []
        if cfg.require_t0:
            order = list(range(n))
            rng.shuffle(order)
            for a, b in itertools.combinations(order, 2):
                if _coin(rng, cfg.edge_probability):
                    arrows.append((names[a], names[b]))
        else:
            for a, b in itertools.permutations(range(n), 2):
                if _coin(rng, cfg.edge_probability):
                    arrows.append((names[a], names[b]))
        space = build_space(names, arrows)
        if not cfg.require_irreducible or is_irreducible_space(space):
            return space
    raise GenerationError(f"no irreducible space after {cfg.max_retries} attempts")


def random_monotone_map(src: FiniteSpace, tgt: FiniteSpace, rng: random.Random, tries: int = 100) -> SpaceMap | None:
    """Uniform choice per point among admissible images, restarting on dead ends."""
    if not len(tgt):
        return SpaceMap(src, tgt, ()) if not len(src) else None
    order = sorted(range(len(src)), key=lambda i: bin(src.down[i]).count("1"))
    for _ in range(tries):
        images = [-1] * len(src)
        for k, x in enumerate(order):
            allowed = tgt.full_mask
            for w in order[:k]:
                if src.up[w] >> x & 1:
                    allowed &= tgt.up[images[w]]
                if src.up[x] >> w & 1:
                    allowed &= tgt.down[images[w]]
            if not allowed:
                break
            images[x] = rng.choice(list(iter_bits(allowed)))
        else:
            return SpaceMap(src, tgt, tuple(images))
    return None


def random_map(src: FiniteSpace, tgt: FiniteSpace, rng: random.Random) -> SpaceMap:
    return SpaceMap(src, tgt, tuple(rng.randrange(len(tgt)) for _ in src.points))
