import pytest

from artifact.combinatorics import (
    brauer_graph,
    build_quiver,
    graph_predicates,
    quiver_B,
    quiver_K,
    quiver_R,
    quiver_single_edge,
    quiver_tree2,
)
from artifact.errors import FNotCompatible, MalformedPermutation, NotTwoRegular


def test_quiver_k_orbits():
    q = quiver_K()
    assert q.g_orbits() == [("a1", "b2"), ("a2", "b3"), ("a3", "b1")]
    assert all(q.n(a) == 2 for a in q.arrows)
    assert q.bar["a1"] == "b1" and q.g["a1"] == "b2"
    assert q.g_path("a1", 5) == ("a1", "b2", "a1", "b2", "a1")


def test_g_is_bar_after_f():
    for q in (quiver_K(), quiver_B(), quiver_R(), quiver_single_edge(), quiver_tree2()):
        for a in q.arrows:
            assert q.g[a] == q.bar[q.f[a]]
            assert q.tgt[a] == q.src[q.g[a]]


def test_tree_orbits():
    q = quiver_tree2()
    assert q.g_orbits() == [("p",), ("q", "r"), ("s",)]
    assert q.f_cycles() == [("p", "q", "s", "r")]


def test_brauer_graphs():
    pk = graph_predicates(brauer_graph(quiver_K()))
    assert pk == {"bipartite": False, "simple": True, "connected": True}
    bg = brauer_graph(quiver_tree2())
    assert len(bg.vertices) == 3 and len(bg.edges) == 2
    assert graph_predicates(bg)["bipartite"]
    assert "--" in bg.to_dot()


def test_half_edge_successor():
    q = quiver_K()
    bg = brauer_graph(q)
    half = bg.half_edges["a1"][0]
    assert bg.successor(half, q) == (q.src["b2"], "b2")


def test_rejections():
    with pytest.raises(NotTwoRegular):
        build_quiver(["1"], [("a", "1", "1")], [("a",)])
    with pytest.raises(MalformedPermutation):
        build_quiver(["1"], [("a", "1", "1"), ("b", "1", "1")], [("a",)])
    with pytest.raises(MalformedPermutation):
        build_quiver(["1"], [("a", "1", "1"), ("b", "1", "1")], [("a", "b"), ("a",)])
    arrows = [("a1", "1", "2"), ("a2", "2", "1"), ("b1", "1", "1"), ("b2", "2", "2")]
    with pytest.raises(FNotCompatible):
        build_quiver(["1", "2"], arrows, [("a1", "b1", "a2"), ("b2",)])
