"""Per-instance checkers for the lemmas and theorems about specializations.

Each checker evaluates the hypotheses and the conclusion separately and
returns a :class:`CheckResult`. An instance violating the hypotheses is
``applicable=False``; only an applicable instance can be inconsistent.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .lengths import RestrictSeries, dim_space, length_of_space, length_of_subset, presentation
from .morphisms import (
    SpaceMap,
    check_surjective_norm,
    dim_equality_check,
    injectivity_criterion,
    is_injective,
    is_ip_preserving,
    is_length_preserving,
    is_specialization_preserving,
    norm,
    satisfies_condition_star,
)
from .space import FiniteSpace, PointSet, final_points, has_uip, initial_points

SPACE_CHECKS = ("lemma21", "rem23")
MAP_CHECKS = ("lemma17", "thm33", "thm37", "cor38", "rem36", "prop42")
ALL_CHECKS = ("lemma17", "lemma21", "thm33", "thm37", "cor38", "rem36", "prop42", "rem23")


@dataclass
class CheckResult:
    check: str
    applicable: bool
    consistent: bool
    detail: dict = field(default_factory=dict)


def _endpoints_ok(space: FiniteSpace, series: RestrictSeries) -> bool:
    return series.chain[0] in initial_points(space) and series.chain[-1] in final_points(space)


def lemma21(space: FiniteSpace) -> CheckResult:
    """(UIP) space: l(E) == dim E, and presentations run from initial to final."""
    uip = has_uip(space).holds
    length = length_of_space(space).value
    dim = dim_space(space)
    ends_ok = True
    if len(space):
        ends_ok = _endpoints_ok(space, presentation(space))
    detail = {"length": length, "dim": dim, "presentation_endpoints_ok": ends_ok}
    return CheckResult("lemma21", uip, not uip or (length == dim and ends_ok), detail)


def rem23(space: FiniteSpace, subset: PointSet) -> CheckResult:
    """Ambient length of a subset bounds the subspace dimension from above."""
    length = length_of_subset(space, subset).value
    dim = dim_space(space, subset)
    detail = {"subset": list(subset), "length": length, "dim": dim, "strict": length > dim}
    return CheckResult("rem23", True, length >= dim, detail)


def lemma17(f: SpaceMap) -> CheckResult:
    sp = is_specialization_preserving(f)
    ip = is_ip_preserving(f)
    detail = {"specialization_preserving": sp.holds, "ip_preserving": ip.holds}
    return CheckResult("lemma17", True, sp.holds == ip.holds, detail)


def thm33(f: SpaceMap) -> CheckResult:
    if not is_specialization_preserving(f):
        return CheckResult("thm33", False, True, {"reason": "not specialization-preserving"})
    star = satisfies_condition_star(f)
    report = norm(f)
    detail = {"norm": str(report.value), "witness": report.witness_pair, "condition_star": star.holds}
    return CheckResult("thm33", star.holds, not star.holds or report.value <= 1, detail)


def thm37(f: SpaceMap) -> CheckResult:
    if not is_specialization_preserving(f):
        return CheckResult("thm37", False, True, {"reason": "not specialization-preserving"})
    v = injectivity_criterion(f)
    detail = {
        "injective": v.injective,
        "length_preserving": v.length_preserving,
        "level_separated": v.level_separated,
        "reason": v.reason,
    }
    return CheckResult("thm37", v.applicable, not v.applicable or v.theorem_consistent, detail)


def cor38(f: SpaceMap) -> CheckResult:
    if not is_specialization_preserving(f):
        return CheckResult("cor38", False, True, {"reason": "not specialization-preserving"})
    applicable = bool(is_injective(f)) and bool(satisfies_condition_star(f)) and dim_space(f.source) >= 1
    value = norm(f).value
    return CheckResult("cor38", applicable, not applicable or value == 1, {"norm": str(value)})


def rem36(f: SpaceMap) -> CheckResult:
    """(i) dim X > 0 and length-preserving gives norm 1; (ii) equal dims and surjective gives norm >= 1."""
    if not is_specialization_preserving(f):
        return CheckResult("rem36", False, True, {"reason": "not specialization-preserving"})
    value = norm(f).value
    first = dim_space(f.source) > 0 and bool(is_length_preserving(f))
    second = check_surjective_norm(f)
    ok = (not first or value == 1) and second.consistent
    detail = {"norm": str(value), "part_i": first, "part_ii": second.applicable}
    return CheckResult("rem36", first or second.applicable, ok, detail)


def prop42(f: SpaceMap) -> CheckResult:
    if not is_specialization_preserving(f):
        return CheckResult("prop42", False, True, {"reason": "not specialization-preserving"})
    v = dim_equality_check(f)
    applicable = v.applicable and v.length_preserving and v.chain_lifting
    detail = {
        "length_preserving": v.length_preserving,
        "chain_lifting": v.chain_lifting,
        "dims": list(v.dims),
        "reason": v.reason,
    }
    return CheckResult("prop42", applicable, not applicable or v.proposition_consistent, detail)


MAP_CHECKERS = {
    "lemma17": lemma17,
    "thm33": thm33,
    "thm37": thm37,
    "cor38": cor38,
    "rem36": rem36,
    "prop42": prop42,
}

