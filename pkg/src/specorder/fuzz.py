"""Exhaustive and randomized verification campaigns with replayable certificates."""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import checks
from .catalog import (
    GeneratorConfig,
    derive_seed,
    enumerate_maps,
    enumerate_monotone_maps,
    enumerate_spaces,
    enumerate_spaces_up_to_iso,
    random_map,
    random_monotone_map,
    random_space,
)
from .documents import morphism_from_dict, morphism_to_dict, space_from_dict, space_to_dict
from .morphisms import SpaceMap
from .space import FiniteSpace, PointSet

MAX_CERTIFICATES_PER_CHECK = 5


@dataclass
class Tally:
    applicable: int = 0
    consistent: int = 0
    inconsistent: int = 0
    inapplicable: int = 0

    def add(self, res: checks.CheckResult) -> None:
        if not res.applicable:
            self.inapplicable += 1
        else:
            self.applicable += 1
            if res.consistent:
                self.consistent += 1
        if not res.consistent:
            self.inconsistent += 1


@dataclass
class Campaign:
    checks: tuple[str, ...]
    seed: int = 0
    trials: int = 100
    max_points: int = 8
    edge_probability: Fraction = Fraction(1, 3)
    exhaustive_max: int = 4
    exhaustive_map_max: int = 3
    cert_dir: Path | None = None
    tallies: dict[str, Tally] = field(default_factory=dict)
    instances: dict[str, dict[int, int]] = field(default_factory=dict)
    certificates: list[Path] = field(default_factory=list)

    def __post_init__(self):
        unknown = [c for c in self.checks if c not in checks.ALL_CHECKS]
        if unknown:
            raise ValueError(f"unknown check ids {unknown}; choose from {', '.join(checks.ALL_CHECKS)}")
        for c in self.checks:
            self.tallies[c] = Tally()
        self.instances = {"exhaustive_spaces": {}, "exhaustive_maps": {}}

    # ---------------------------------------------------------------- record

    def _record(self, res: checks.CheckResult, phase: str, index: int, instance: dict) -> None:
        self.tallies[res.check].add(res)
        if res.consistent:
            return
        written = sum(1 for p in self.certificates if p.name.startswith(res.check + "-"))
        if self.cert_dir is None or written >= MAX_CERTIFICATES_PER_CHECK:
            return
        cert = {
            "check": res.check,
            "phase": phase,
            "seed": self.seed,
            "index": index,
            "instance": instance,
            "detail": _jsonable(res.detail),
        }
        self.cert_dir.mkdir(parents=True, exist_ok=True)
        path = self.cert_dir / f"{res.check}-{phase}-{index}.json"
        path.write_text(json.dumps(cert, indent=2) + "\n", encoding="utf-8")
        self.certificates.append(path)

    def _space_checks(self, space: FiniteSpace, phase: str, index: int, rng: random.Random | None) -> None:
        if "lemma21" in self.checks:
            self._record(checks.lemma21(space), phase, index, {"kind": "space", "document": space_to_dict(space)})
        if "rem23" in self.checks:
            if rng is None:
                subsets = range(1 << len(space))
            else:
                subsets = [rng.getrandbits(len(space)) if len(space) else 0]
            for mask in subsets:
                sub = PointSet(space, mask)
                self._record(
                    checks.rem23(space, sub),
                    phase,
                    index,
                    {"kind": "space", "document": space_to_dict(space), "subset": list(sub)},
                )

    def _map_checks(self, f: SpaceMap, phase: str, index: int, monotone_only: bool) -> None:
        inst = None
        for name in self.checks:
            if name not in checks.MAP_CHECKERS or (monotone_only and name == "lemma17"):
                continue
            if inst is None:
                inst = {"kind": "morphism", "document": morphism_to_dict(f)}
            self._record(checks.MAP_CHECKERS[name](f), phase, index, inst)

    # ------------------------------------------------------------------ run

    def run_exhaustive(self) -> None:
        counter = 0
        if any(c in checks.SPACE_CHECKS for c in self.checks):
            for n in range(self.exhaustive_max + 1):
                count = 0
                for space in enumerate_spaces(n, t0_only=True):
                    self._space_checks(space, "exhaustive", counter, None)
                    counter += 1
                    count += 1
                self.instances["exhaustive_spaces"][n] = count
        map_checks = [c for c in self.checks if c in checks.MAP_CHECKERS]
        if not map_checks:
            return
        spaces = [s for n in range(self.exhaustive_map_max + 1) for s in enumerate_spaces_up_to_iso(n)]
        total = 0
        for src in spaces:
            for tgt in spaces:
                if not len(tgt) and len(src):
                    continue
                if "lemma17" in map_checks:
                    for f in enumerate_maps(src, tgt):
                        self._record(checks.lemma17(f), "exhaustive", counter, {"kind": "morphism", "document": morphism_to_dict(f)})
                        counter += 1
                        total += 1
                if set(map_checks) - {"lemma17"}:
                    for f in enumerate_monotone_maps(src, tgt):
                        self._map_checks(f, "exhaustive", counter, monotone_only=True)
                        counter += 1
                        total += 1
        self.instances["exhaustive_maps"][self.exhaustive_map_max] = total

    def run_random(self) -> None:
        for t in range(self.trials):
            rng = random.Random(derive_seed(self.seed, t))
            cfg = dict(edge_probability=self.edge_probability, require_t0=True)
            if any(c in checks.SPACE_CHECKS for c in self.checks):
                space = random_space(
                    GeneratorConfig(seed=derive_seed(self.seed, t, 0), num_points=rng.randint(0, self.max_points), **cfg)
                )
                self._space_checks(space, "random", t, rng)
            if any(c in checks.MAP_CHECKERS for c in self.checks):
                irreducible = t % 2 == 1
                src = random_space(
                    GeneratorConfig(
                        seed=derive_seed(self.seed, t, 1),
                        num_points=rng.randint(1, self.max_points),
                        edge_probability=Fraction(1, 2) if irreducible else self.edge_probability,
                        require_irreducible=irreducible,
                    )
                )
                tgt = random_space(
                    GeneratorConfig(
                        seed=derive_seed(self.seed, t, 2),
                        num_points=rng.randint(1, self.max_points),
                        edge_probability=Fraction(1, 2) if irreducible else self.edge_probability,
                        require_irreducible=irreducible,
                    )
                )
                f = random_monotone_map(src, tgt, rng)
                if f is not None:
                    self._map_checks(f, "random", t, monotone_only=False)
                if "lemma17" in self.checks:
                    g = random_map(src, tgt, rng)
                    self._record(checks.lemma17(g), "random", t, {"kind": "morphism", "document": morphism_to_dict(g)})

    def run(self) -> dict:
        self.run_exhaustive()
        self.run_random()
        return self.summary()

    @property
    def inconsistencies(self) -> int:
        return sum(t.inconsistent for t in self.tallies.values())

    def summary(self) -> dict:
        return {
            "seed": self.seed,
            "trials": self.trials,
            "max_points": self.max_points,
            "instances": {k: {str(n): c for n, c in v.items()} for k, v in self.instances.items()},
            "checks": {c: vars(t).copy() for c, t in self.tallies.items()},
            "inconsistencies": self.inconsistencies,
            "certificates": [str(p) for p in self.certificates],
        }


def _jsonable(value):
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def replay(cert: dict) -> checks.CheckResult:
    """Re-run the check recorded in a certificate on its stored instance."""
    inst = cert["instance"]
    name = cert["check"]
    if inst["kind"] == "space":
        space = space_from_dict(inst["document"])
        if name == "rem23":
            return checks.rem23(space, space.subset(inst["subset"]))
        return checks.lemma21(space)
    f = morphism_from_dict(inst["document"])
    return checks.MAP_CHECKERS[name](f)
