"""JSON documents for spaces and morphisms.

Space document::

    {"name": "KST", "points": ["e2", "ht", "hs", "m"],
     "specializations": [["e2", "ht"], ["e2", "hs"], ["ht", "m"], ["hs", "m"]]}

Morphism document::

    {"source": <space document or path>, "target": <same>, "map": {"e2": "e1", ...}}

Paths inside a morphism document are resolved relative to the document's own
directory. Unknown keys are rejected.
"""
from __future__ import annotations

import json
from pathlib import Path

from .errors import MapError, SpaceError, SpecOrderError
from .morphisms import SpaceMap
from .space import FiniteSpace, build_space

SPACE_KEYS = ("name", "points", "specializations")
MORPHISM_KEYS = ("source", "target", "map")


class DocumentError(SpecOrderError):
    """Malformed document; ``location`` is a JSON-path-like pointer."""

    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}")
        self.location = location


class InvariantError(SpecOrderError):
    """Well-formed document describing an invalid object."""


def _expect(cond: bool, location: str, message: str) -> None:
    if not cond:
        raise DocumentError(location, message)


def space_from_dict(doc, where: str = "$") -> FiniteSpace:
    _expect(isinstance(doc, dict), where, "expected an object")
    unknown = sorted(set(doc) - set(SPACE_KEYS))
    _expect(not unknown, where, f"unknown keys {unknown}")
    for key in SPACE_KEYS:
        _expect(key in doc, where, f"missing key {key!r}")
    _expect(isinstance(doc["name"], str), f"{where}.name", "expected a string")
    points = doc["points"]
    _expect(isinstance(points, list), f"{where}.points", "expected a list")
    for i, p in enumerate(points):
        _expect(isinstance(p, str), f"{where}.points[{i}]", "expected a string")
    arrows = doc["specializations"]
    _expect(isinstance(arrows, list), f"{where}.specializations", "expected a list")
    known = set(points)
    for i, pair in enumerate(arrows):
        loc = f"{where}.specializations[{i}]"
        _expect(isinstance(pair, list) and len(pair) == 2, loc, "expected a [from, to] pair")
        for k, p in enumerate(pair):
            _expect(isinstance(p, str), f"{loc}[{k}]", "expected a string")
            _expect(p in known, f"{loc}[{k}]", f"unknown point {p!r}")
    try:
        return build_space(points, [tuple(a) for a in arrows], doc["name"])
    except SpaceError as exc:
        raise InvariantError(f"{where}: {exc}") from None


def space_to_dict(space: FiniteSpace, arrows=None) -> dict:
    """Serialize with the closed relation's non-reflexive pairs as arrows."""
    if arrows is None:
        arrows = space.arrows()
    return {
        "name": space.name,
        "points": list(space.points),
        "specializations": [list(a) for a in arrows],
    }


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _read_json(path: Path):
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(str(path), f"cannot read file ({exc.strerror})") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from None


def load_space(path) -> FiniteSpace:
    return space_from_dict(_read_json(Path(path)))


def _space_ref(value, where: str, base: Path | None) -> FiniteSpace:
    if isinstance(value, str):
        path = Path(value)
        if base is not None and not path.is_absolute():
            path = base / path
        return space_from_dict(_read_json(path), f"{where}<{value}>")
    return space_from_dict(value, where)


def morphism_from_dict(doc, base: Path | None = None) -> SpaceMap:
    _expect(isinstance(doc, dict), "$", "expected an object")
    unknown = sorted(set(doc) - set(MORPHISM_KEYS))
    _expect(not unknown, "$", f"unknown keys {unknown}")
    for key in MORPHISM_KEYS:
        _expect(key in doc, "$", f"missing key {key!r}")
    source = _space_ref(doc["source"], "$.source", base)
    target = _space_ref(doc["target"], "$.target", base)
    mapping = doc["map"]
    _expect(isinstance(mapping, dict), "$.map", "expected an object")
    for k, v in mapping.items():
        _expect(isinstance(v, str), f"$.map.{k}", "expected a string")
    try:
        return SpaceMap.build(source, target, mapping)
    except MapError as exc:
        raise InvariantError(f"$.map: {exc}") from None


def morphism_to_dict(f: SpaceMap) -> dict:
    return {
        "source": space_to_dict(f.source),
        "target": space_to_dict(f.target),
        "map": f.as_dict(),
    }


def load_morphism(path) -> SpaceMap:
    path = Path(path)
    return morphism_from_dict(_read_json(path), path.parent)
