"""Analysis reports for spaces and morphisms, as JSON-ready dicts and text."""
from __future__ import annotations

from . import checks
from .lengths import dim_space, length_of_space, point_lengths
from .morphisms import (
    SpaceMap,
    classify,
    is_injective,
    is_ip_preserving,
    is_specialization_preserving,
    norm,
)
from .space import (
    ENUMERATION_LIMIT,
    FiniteSpace,
    closed_points,
    has_uip,
    initial_points,
    irreducible_components,
    is_t0,
    t0_quotient,
)

EMBED_CAVEAT = (
    "The norm 2 stated for Spec Q[t] -> Spec Z[t] is not reproduced on this truncation: "
    "every contracted prime (t-i) keeps height 1, so all length ratios are at most 1."
)


def analyze_space(space: FiniteSpace) -> dict:
    uip = has_uip(space)
    length = length_of_space(space)
    lengths = point_lengths(space)
    report = {
        "name": space.name,
        "points": list(space.points),
        "t0": is_t0(space),
        "uip": {
            "holds": uip.holds,
            "method": uip.method,
            "witness": None if uip.witness is None else list(uip.witness),
        },
        "components": [
            {"generic": list(initial_points(space, c)), "points": list(c)} for c in irreducible_components(space)
        ],
        "generic_points": list(initial_points(space)),
        "closed_points": list(closed_points(space)),
        "dim": dim_space(space),
        "length": length.value,
        "presentation": None if length.witness is None else list(length.witness.chain),
        "point_lengths": {p: lengths[i] for i, p in enumerate(space.points)},
    }
    if not report["t0"]:
        quotient, rep_of = t0_quotient(space)
        classes: dict[str, list[str]] = {q: [] for q in quotient.points}
        for p in space.points:
            classes[rep_of[p]].append(p)
        report["quotient"] = {"points": list(quotient.points), "classes": classes}
    return report


def _pair(w):
    return None if w is None else list(w)


def analyze_morphism(f: SpaceMap, limit: int = ENUMERATION_LIMIT) -> dict:
    spec = is_specialization_preserving(f)
    report: dict = {
        "source": f.source.name,
        "target": f.target.name,
        "map": f.as_dict(),
        "specialization_preserving": spec.holds,
        "specialization_witness": _pair(spec.witness),
    }
    if len(f.source) <= limit:
        ip = is_ip_preserving(f, limit)
        report["ip_preserving"] = ip.holds
    else:
        report["ip_preserving"] = None
    report["injective"] = is_injective(f).holds
    if not spec:
        return report
    nr = norm(f)
    cls = classify(f, limit)
    report["norm"] = str(nr.value)
    report["norm_witness"] = _pair(nr.witness_pair)
    report["flags"] = {
        "condition_star": cls.condition_star,
        "length_preserving": cls.length_preserving,
        "asymptotic": cls.asymptotic,
        "null": cls.null,
        "level_separated": cls.level_separated,
        "level_reduced": cls.level_reduced,
        "level_mixed": cls.level_mixed,
        "chain_lifting": cls.chain_lifting,
    }
    report["counterexamples"] = {k: _pair(v) for k, v in cls.counterexamples.items()}
    theorems = {}
    for name in ("thm33", "thm37", "cor38", "rem36", "prop42"):
        res = checks.MAP_CHECKERS[name](f)
        theorems[name] = {
            "applicable": res.applicable,
            "consistent": res.consistent,
            "detail": {k: _pair(v) if isinstance(v, tuple) else v for k, v in res.detail.items()},
        }
    report["theorems"] = theorems
    if f.source.name.startswith("spec_kt(") and f.target.name.startswith("spec_zt("):
        report["note"] = EMBED_CAVEAT
    return report


def _yes(flag) -> str:
    return {True: "yes", False: "no", None: "n/a"}[flag]


def render_space(r: dict) -> str:
    lines = [f"space {r['name'] or '(unnamed)'}: {len(r['points'])} points"]
    lines.append(f"T0: {_yes(r['t0'])}")
    uip = f"(UIP): {_yes(r['uip']['holds'])} [{r['uip']['method']}]"
    if r["uip"]["witness"]:
        uip += " witness {" + ", ".join(r["uip"]["witness"]) + "}"
    lines.append(uip)
    if "quotient" in r:
        classes = "; ".join("{" + ", ".join(m) + "}" for m in r["quotient"]["classes"].values())
        lines.append(f"T0 quotient classes: {classes}")
    lines.append(f"irreducible components: {len(r['components'])}")
    for c in r["components"]:
        lines.append(f"  root {', '.join(c['generic'])}: {' '.join(c['points'])}")
    lines.append(f"generic points: {' '.join(r['generic_points'])}")
    lines.append(f"closed points: {' '.join(r['closed_points'])}")
    lines.append(f"dim = {r['dim']}, l(E) = {r['length']}")
    if r["presentation"] is not None:
        lines.append(f"presentation: {' -> '.join(r['presentation'])}")
    lines.append("point lengths: " + " ".join(f"{p}={v}" for p, v in r["point_lengths"].items()))
    return "\n".join(lines) + "\n"


def render_morphism(r: dict) -> str:
    lines = [f"morphism {r['source'] or '(unnamed)'} -> {r['target'] or '(unnamed)'}"]
    lines.append("map: " + ", ".join(f"{k}->{v}" for k, v in r["map"].items()))
    sp = f"specialization-preserving: {_yes(r['specialization_preserving'])}"
    if r["specialization_witness"]:
        sp += f" (fails at {r['specialization_witness'][0]} -> {r['specialization_witness'][1]})"
    lines.append(sp)
    lines.append(f"IP-preserving: {_yes(r['ip_preserving'])}")
    lines.append(f"injective: {_yes(r['injective'])}")
    if "norm" in r:
        w = r["norm_witness"]
        lines.append(f"norm: {r['norm']}" + (f" (attained at {w[0]} -> {w[1]})" if w else ""))
        for key, value in r["flags"].items():
            line = f"{key.replace('_', '-')}: {_yes(value)}"
            wit = r["counterexamples"].get(key)
            if value is False and wit:
                line += f" (witness {', '.join(map(str, wit))})"
            lines.append(line)
        for name, t in r["theorems"].items():
            state = "consistent" if t["consistent"] else "INCONSISTENT"
            if not t["applicable"]:
                state = "inapplicable"
            lines.append(f"{name}: {state}")
    if "note" in r:
        lines.append(f"note: {r['note']}")
    return "\n".join(lines) + "\n"
