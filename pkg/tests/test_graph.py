import pytest
from hypothesis import given, strategies as st

from leavitt.graph import GraphError, Path, build_graph, classify_vertex, primitive_root, rose, rotations


def test_rose_two():
    g = rose(2)
    assert g.vertices == ("v",) or list(g.vertices) == ["v"]
    assert [e[0] for e in g.edges] == ["e1", "e2"]
    assert all(g.src[e] == 0 and g.rng[e] == 0 for e in range(2))
    assert g.special[0] == 1  # last declared edge


def test_build_from_text_matches_rose():
    assert build_graph("vertex v\nedge e1 v v\nedge e2 v v\n") == rose(2)


def test_rose_one_and_zero():
    assert rose(1).num_edges == 1
    with pytest.raises(GraphError):
        rose(0)


def test_two_vertex_graph():
    g = build_graph("vertex a\nvertex b\nedge f a b  # one edge\n")
    assert (g.num_vertices, g.num_edges) == (2, 1)
    assert classify_vertex(g, "a") == "regular"
    assert classify_vertex(g, "b") == "sink"
    with pytest.raises(GraphError):
        classify_vertex(g, "zz")


@pytest.mark.parametrize("text", [
    "edge f a b",
    "vertex a\nvertex a",
    "vertex a\nedge f a b",
    "vertex a\nedge a a a",
    "",
    "vertex 1a",
    "node a",
])
def test_bad_graph_text(text):
    with pytest.raises(GraphError):
        build_graph(text)


def test_render_round_trip(sink_graph):
    assert build_graph(sink_graph.render()) == sink_graph
    assert build_graph(rose(4).render()) == rose(4)


def test_special_edge_is_last_declared(sink_graph):
    g = sink_graph
    assert g.edge_name(g.special[g.vertex("a")]) == "k"
    assert g.special[g.vertex("c")] is None


def test_paths_and_concat(sink_graph):
    g = sink_graph
    p = Path.of(g, "g", "f")
    q = Path.of(g, "h")
    assert (p.source, p.range) == (g.vertex("a"), g.vertex("b"))
    pq = p.concat(q)
    assert len(pq.edges) == len(p.edges) + len(q.edges)
    assert pq.range == g.vertex("c")
    with pytest.raises(GraphError):
        q.concat(p)
    with pytest.raises(GraphError):
        Path.of(g, "f", "g")
    empty = Path.of(g, base="b")
    assert empty.source == empty.range == g.vertex("b")


def test_rotations_examples():
    g = rose(2)
    c = rotations(Path.of(g, "e1", "e2"))
    assert [r.edges for r in c.rotations] == [(0, 1), (1, 0)]
    assert c.primitive
    d = rotations(Path.of(g, "e1", "e1"))
    assert {r.edges for r in d.rotations} == {(0, 0)} and not d.primitive
    e = rotations(Path.of(g, "e1"))
    assert len(e.rotations) == 1 and e.primitive
    with pytest.raises(GraphError):
        rotations(Path.of(build_graph("vertex a\nvertex b\nedge f a b"), "f"))


@given(st.lists(st.integers(0, 2), min_size=1, max_size=10))
def test_rotation_counts(word):
    g = rose(3)
    c = rotations(Path(g, 0, tuple(word)))
    assert len(c.rotations) == len(word)
    root = primitive_root(tuple(word))
    repeats = len(word) // len(root)
    # |c| / (number of repeats of the primitive root) distinct rotations
    assert len(c.distinct) == len(word) // repeats == c.period
    assert root * (len(word) // len(root)) == tuple(word)
    assert c.primitive == (len(root) == len(word))
