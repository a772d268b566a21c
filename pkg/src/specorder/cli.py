"""Command-line front end: ``specorder <command> ...``.

Exit codes: 0 success, 2 parse error, 3 invariant violation, 4 map is not
specialization-preserving, 5 a theorem check found an inconsistency.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import checks
from .catalog import FIXTURES, build_fixture
from .documents import (
    DocumentError,
    InvariantError,
    dumps,
    load_morphism,
    load_space,
    morphism_to_dict,
    space_to_dict,
)
from .dot import export_dot
from .errors import SpecOrderError
from .fuzz import Campaign, replay
from .morphisms import SpaceMap, is_specialization_preserving
from .report import analyze_morphism, analyze_space, render_morphism, render_space

EXIT_PARSE, EXIT_INVARIANT, EXIT_DISCONTINUOUS, EXIT_INCONSISTENT = 2, 3, 4, 5


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_analyze(args) -> int:
    space = load_space(args.path)
    report = analyze_space(space)
    _emit(dumps(report) if args.json else render_space(report), None)
    return 0


def cmd_analyze_morphism(args) -> int:
    f = load_morphism(args.path)
    check = is_specialization_preserving(f)
    if not check and not args.allow_discontinuous:
        x, y = check.witness
        print(
            f"error: map is not specialization-preserving: {x} -> {y} but {f(x)} -/-> {f(y)}",
            file=sys.stderr,
        )
        return EXIT_DISCONTINUOUS
    report = analyze_morphism(f)
    _emit(dumps(report) if args.json else render_morphism(report), None)
    return 0


def cmd_export_dot(args) -> int:
    _emit(export_dot(load_space(args.path)), args.output)
    return 0


def cmd_catalog(args) -> int:
    if args.action == "list":
        for fx in FIXTURES.values():
            print(f"{fx.name + fx.params:<26}{fx.provenance}")
        return 0
    if not args.fixture:
        print("error: catalog build needs a fixture id", file=sys.stderr)
        return EXIT_PARSE
    try:
        obj = build_fixture(args.fixture)
    except SpecOrderError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    doc = morphism_to_dict(obj) if isinstance(obj, SpaceMap) else space_to_dict(obj)
    _emit(dumps(doc), args.output)
    return 0


def cmd_fuzz(args) -> int:
    names = tuple(c.strip() for c in args.checks.split(",") if c.strip())
    try:
        campaign = Campaign(
            names,
            seed=args.seed,
            trials=args.trials,
            max_points=args.max_points,
            edge_probability=Fraction(args.edge_probability),
            exhaustive_max=args.exhaustive_max,
            exhaustive_map_max=args.exhaustive_map_max,
            cert_dir=Path(args.cert_dir),
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    summary = campaign.run()
    if args.json:
        sys.stdout.write(dumps(summary))
    else:
        for key, counts in summary["instances"].items():
            if counts:
                print(f"{key}: " + ", ".join(f"n<={n}: {c}" if key.endswith("maps") else f"n={n}: {c}" for n, c in counts.items()))
        print(f"random trials: {args.trials} (seed {args.seed}, up to {args.max_points} points)")
        for name, t in summary["checks"].items():
            print(
                f"{name}: applicable={t['applicable']} consistent={t['consistent']} "
                f"inapplicable={t['inapplicable']} inconsistent={t['inconsistent']}"
            )
        for path in summary["certificates"]:
            print(f"certificate: {path}")
    return EXIT_INCONSISTENT if campaign.inconsistencies else 0


def cmd_replay(args) -> int:
    try:
        cert = json.loads(Path(args.path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {args.path}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    res = replay(cert)
    state = "consistent" if res.consistent else "INCONSISTENT"
    print(f"{res.check}: applicable={res.applicable} {state}")
    print(json.dumps(res.detail, default=list))
    return 0 if res.consistent else EXIT_INCONSISTENT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="specorder", description="Specialization orders on finite spaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="analyze a space document")
    p.add_argument("path")
    p.add_argument("--json", action="store_true", help="print the structured report")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("analyze-morphism", help="analyze a morphism document")
    p.add_argument("path")
    p.add_argument("--allow-discontinuous", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_analyze_morphism)

    p = sub.add_parser("export-dot", help="write the forest picture as Graphviz DOT")
    p.add_argument("path")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_export_dot)

    p = sub.add_parser("fuzz", help="run verification campaigns")
    p.add_argument("--checks", default=",".join(checks.ALL_CHECKS), help="comma-separated check ids")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--max-points", type=int, default=8)
    p.add_argument("--edge-probability", default="1/3")
    p.add_argument("--exhaustive-max", type=int, default=4, help="largest space size for space checks")
    p.add_argument("--exhaustive-map-max", type=int, default=3, help="largest space size for map checks")
    p.add_argument("--cert-dir", default="certificates")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("catalog", help="list or build fixtures")
    p.add_argument("action", choices=["list", "build"])
    p.add_argument("fixture", nargs="?")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("replay", help="re-run a fuzz certificate")
    p.add_argument("path")
    p.set_defaults(func=cmd_replay)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InvariantError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
