"""Graphviz export: each irreducible component drawn as a tree on the ground.

Only cover edges are drawn, pointing from generalization to specialization,
with ``rankdir=BT`` so generic points sit at the bottom. Points of equal
length share a rank, so levels line up across components.
"""
from __future__ import annotations

from .lengths import length_of_space, point_lengths
from .space import FiniteSpace, initial_points, irreducible_components, iter_bits


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def cover_edges(space: FiniteSpace) -> list[tuple[int, int]]:
    """Transitive reduction between equivalence-class representatives."""
    reps = [i for i in range(len(space)) if space.class_mask(i) & -space.class_mask(i) == 1 << i]
    rep_mask = sum(1 << r for r in reps)
    edges = []
    for a in reps:
        strict = space.up[a] & ~space.down[a] & rep_mask
        for b in iter_bits(strict):
            between = strict & space.down[b] & ~space.class_mask(b)
            if not between:
                edges.append((a, b))
    return edges


def export_dot(space: FiniteSpace) -> str:
    pts = space.points
    levels = point_lengths(space)
    top = length_of_space(space).value
    out = [f"digraph {_q(space.name or 'space')} {{", "  rankdir=BT;", "  node [shape=ellipse];"]
    placed = 0
    for k, comp in enumerate(irreducible_components(space)):
        members = comp.mask & ~placed
        placed |= comp.mask
        roots = ", ".join(initial_points(space, comp))
        out.append(f"  subgraph {_q(f'cluster_{k}')} {{")
        out.append(f"    label={_q(roots)};")
        for i in iter_bits(members):
            out.append(f"    {_q(pts[i])};")
        out.append("  }")
    by_rank: dict[int, list[int]] = {}
    for i in range(len(space)):
        by_rank.setdefault(top - levels[i], []).append(i)
    for rank in sorted(by_rank):
        names = " ".join(f"{_q(pts[i])};" for i in by_rank[rank])
        out.append(f"  {{ rank=same; {names} }}  // level {rank}, l(x) = {top - rank}")
    for a, b in cover_edges(space):
        out.append(f"  {_q(pts[a])} -> {_q(pts[b])};")
    for i in range(len(space)):
        cls = space.class_mask(i)
        rep = (cls & -cls).bit_length() - 1
        if rep != i:
            out.append(f"  {_q(pts[rep])} -> {_q(pts[i])} [dir=both, style=dashed];")
    out.append("}")
    return "\n".join(out) + "\n"
