import re

import networkx as nx
from hypothesis import given

from samples import spaces
from specorder.dot import export_dot
from specorder.space import build_space, is_t0

EDGE = re.compile(r'^  "([^"]+)" -> "([^"]+)";$', re.M)
CLUSTER = re.compile(r'subgraph "cluster_\d+"')
RANK = re.compile(r"\{ rank=same; (.*?) \}  // level (\d+)")


def edges(text):
    return set(EDGE.findall(text))


def ranks(text):
    out = {}
    for names, level in RANK.findall(text):
        for n in re.findall(r'"([^"]+)"', names):
            out[n] = int(level)
    return out


def test_chain(ch2):
    text = export_dot(ch2)
    assert edges(text) == {("x0", "x1"), ("x1", "x2")}
    assert ranks(text) == {"x0": 0, "x1": 1, "x2": 2}
    assert len(CLUSTER.findall(text)) == 1


def test_kst_drops_the_long_edge(kst):
    text = export_dot(kst)
    assert edges(text) == {("e2", "ht"), ("e2", "hs"), ("ht", "m"), ("hs", "m")}
    assert len(CLUSTER.findall(text)) == 1
    assert "rankdir=BT" in text


def test_antichain_has_singleton_clusters(a3):
    text = export_dot(a3)
    assert len(CLUSTER.findall(text)) == 3
    assert edges(text) == set()


def test_non_t0_classes_are_marked(nont0):
    text = export_dot(nont0)
    assert '"x" -> "y" [dir=both, style=dashed];' in text


def test_quoting():
    s = build_space(['a "q"', "b\\c"], [('a "q"', "b\\c")], 'we"ird')
    text = export_dot(s)
    assert text.startswith('digraph "we\\"ird" {')
    assert '"a \\"q\\"" -> "b\\\\c";' in text


@given(spaces(max_points=7))
def test_edges_are_the_transitive_reduction(space):
    g = nx.DiGraph()
    g.add_nodes_from(space.points)
    g.add_edges_from((x, y) for x in space.points for y in space.points if x != y and space.leq(x, y))
    assert edges(export_dot(space)) == set(nx.transitive_reduction(g).edges())


@given(spaces(max_points=7, t0=False))
def test_output_is_deterministic_and_ranked_by_length(space):
    a, b = export_dot(space), export_dot(space)
    assert a == b
    r = ranks(a)
    assert set(r) == set(space.points)
    for x, y in edges(a):
        assert r[x] < r[y]
    if is_t0(space):
        assert a.count(" -> ") == len(edges(a))
