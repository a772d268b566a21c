"""Slow, independent reference implementations used to cross-check the package.

Nothing here imports from ``specorder``: relations are plain Python sets of
pairs and everything is recomputed from the definitions by brute force.
"""
from __future__ import annotations

import itertools
from fractions import Fraction

import networkx as nx


def closure(points, arrows) -> set[tuple[str, str]]:
    """Reflexive-transitive closure by naive fixpoint iteration."""
    rel = {(p, p) for p in points} | set(map(tuple, arrows))
    while True:
        extra = {(a, d) for (a, b) in rel for (c, d) in rel if b == c} - rel
        if not extra:
            return rel
        rel |= extra


def up(rel, x) -> frozenset:
    return frozenset(y for (a, y) in rel if a == x)


def down(rel, x) -> frozenset:
    return frozenset(a for (a, y) in rel if y == x)


def is_closed(rel, s) -> bool:
    return all(up(rel, x) <= set(s) for x in s)


def closed_sets(points, rel) -> list[frozenset]:
    out = []
    for r in range(len(points) + 1):
        for combo in itertools.combinations(points, r):
            if is_closed(rel, combo):
                out.append(frozenset(combo))
    return out


def irreducible_closed_sets(points, rel) -> list[frozenset]:
    """Nonempty closed sets that are not the union of two proper closed subsets."""
    cs = closed_sets(points, rel)
    out = []
    for c in cs:
        if not c:
            continue
        proper = [d for d in cs if d < c]
        if not any(a | b == c for a in proper for b in proper):
            out.append(c)
    return out


def krull_dim(points, rel) -> int:
    """Longest strictly decreasing chain of irreducible closed sets."""
    irr = irreducible_closed_sets(points, rel)
    g = nx.DiGraph()
    g.add_nodes_from(irr)
    g.add_edges_from((a, b) for a in irr for b in irr if b < a)
    return nx.dag_longest_path_length(g) if irr else 0


def condensation(points, rel) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(points)
    g.add_edges_from((a, b) for (a, b) in rel if a != b)
    return nx.condensation(g)


def longest_chain(points, rel, x, y) -> int:
    """Longest strict chain from the class of x to the class of y."""
    c = condensation(points, rel)
    cx, cy = c.graph["mapping"][x], c.graph["mapping"][y]
    if cx == cy:
        return 0
    best = {cx: 0}
    for node in nx.topological_sort(c):
        if node not in best:
            continue
        for nxt in c.successors(node):
            best[nxt] = max(best.get(nxt, -1), best[node] + 1)
    return best[cy]


def space_length(points, rel) -> int:
    if not points:
        return 0
    return nx.dag_longest_path_length(condensation(points, rel))


def subspace_dim(points, rel, subset) -> int:
    sub = sorted(subset)
    return krull_dim(sub, {(a, b) for (a, b) in rel if a in subset and b in subset})


def ambient_subset_length(points, rel, subset) -> int:
    return max((longest_chain(points, rel, a, b) for a in subset for b in subset if (a, b) in rel), default=0)


def count_posets(n: int) -> int:
    """Labeled posets on n points: orient each unordered pair three ways, keep transitive ones."""
    pairs = list(itertools.combinations(range(n), 2))
    total = 0
    for choice in itertools.product((0, 1, 2), repeat=len(pairs)):
        rel = set()
        for (a, b), c in zip(pairs, choice):
            if c == 1:
                rel.add((a, b))
            elif c == 2:
                rel.add((b, a))
        if all((a, d) in rel for (a, b) in rel for (c, d) in rel if b == c):
            total += 1
    return total


def count_preorders(n: int) -> int:
    """Labeled preorders by filtering every strict relation for transitivity."""
    pairs = [(a, b) for a in range(n) for b in range(n) if a != b]
    total = 0
    for bits in range(1 << len(pairs)):
        rel = {p for k, p in enumerate(pairs) if bits >> k & 1}
        if all((a, d) in rel or a == d for (a, b) in rel for (c, d) in rel if b == c):
            total += 1
    return total


def monotone(rel_s, rel_t, f) -> bool:
    return all((f[a], f[b]) in rel_t for (a, b) in rel_s)


def count_monotone_maps(src_points, rel_s, tgt_points, rel_t) -> int:
    n = 0
    for images in itertools.product(tgt_points, repeat=len(src_points)):
        if monotone(rel_s, rel_t, dict(zip(src_points, images))):
            n += 1
    return n


def norm(src_points, rel_s, tgt_points, rel_t, f) -> Fraction:
    best = Fraction(0)
    for a, b in rel_s:
        ls = longest_chain(src_points, rel_s, a, b)
        if ls > 0:
            best = max(best, Fraction(longest_chain(tgt_points, rel_t, f[a], f[b]), ls))
    return best


def ip_preserving(src_points, rel_s, tgt_points, rel_t, f) -> bool:
    """Generic-point reading: for closed U and initial x0 of U, f(x0) generates closure(f(Sp(x0)))."""
    for u in closed_sets(src_points, rel_s):
        for x0 in u:
            if any((z, x0) in rel_s and (x0, z) not in rel_s for z in u):
                continue
            image = {f[y] for y in up(rel_s, x0) & u}
            cl = set().union(*(up(rel_t, t) for t in image))
            if not cl <= up(rel_t, f[x0]):
                return False
    return True


def strict_chains(points, rel):
    """All strictly increasing chains of points (as tuples), including singletons."""
    def extend(chain):
        yield chain
        last = chain[-1]
        for y in points:
            if (last, y) in rel and (y, last) not in rel:
                yield from extend(chain + (y,))
    for p in points:
        yield from extend((p,))


def chain_lifting(src_points, rel_s, tgt_points, rel_t, f) -> bool:
    """Every strict chain of the target is the image of a strict chain of the source."""
    images = {tuple(f[x] for x in c) for c in strict_chains(src_points, rel_s)}
    cls = {p: frozenset(up(rel_t, p)) for p in tgt_points}
    lifted = {tuple(cls[y] for y in c) for c in images}
    return all(tuple(cls[y] for y in c) in lifted for c in strict_chains(tgt_points, rel_t))
