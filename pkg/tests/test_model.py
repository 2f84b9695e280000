import pytest

from chordlink.errors import GraphError
from chordlink.model import Cluster, Graph, classify_node, induced_edges


def triangle_plus_tail():
    return Graph(
        ["1", "2", "3", "4", "5"],
        [("1", "2", 1.0), ("1", "4", 1.0), ("2", "3", 1.0),
         ("2", "5", 1.0), ("3", "4", 1.0), ("4", "5", 1.0)],
    )


def test_rejects_self_loop():
    with pytest.raises(GraphError):
        Graph(["a"], [("a", "a", 1.0)])


def test_rejects_duplicate_edge():
    with pytest.raises(GraphError):
        Graph(["a", "b"], [("a", "b", 1.0), ("b", "a", 2.0)])


def test_rejects_duplicate_node():
    with pytest.raises(GraphError):
        Graph(["a", "a"], [])


def test_rejects_nonpositive_weight():
    with pytest.raises(GraphError):
        Graph(["a", "b"], [("a", "b", 0.0)])


def test_rejects_dangling_edge():
    with pytest.raises(GraphError):
        Graph(["a"], [("a", "b", 1.0)])


def test_classify_isolated_member_is_introvert():
    g = Graph(["a", "b"], [])
    cluster = Cluster("c", frozenset(["a"]))
    assert classify_node(g, cluster, "a") == "introvert"


def test_classify_external_neighbor_is_extrovert():
    g = Graph(["a", "b"], [("a", "b", 1.0)])
    cluster = Cluster("c", frozenset(["a"]))
    assert classify_node(g, cluster, "a") == "extrovert"


def test_classify_requires_membership():
    g = Graph(["a", "b"], [])
    cluster = Cluster("c", frozenset(["a"]))
    with pytest.raises(GraphError):
        classify_node(g, cluster, "b")


def test_induced_edges_empty():
    g = Graph(["a", "b", "c"], [("a", "c", 1.0)])
    cluster = Cluster("c", frozenset(["a", "b"]))
    assert induced_edges(g, cluster) == []


def test_induced_edges_triangle():
    g = Graph(["a", "b", "c", "d"], [("a", "b", 1.0), ("b", "c", 1.0), ("a", "c", 1.0), ("c", "d", 1.0)])
    cluster = Cluster("c", frozenset(["a", "b", "c"]))
    assert len(induced_edges(g, cluster)) == 3


def test_induced_edges_known_instance():
    g = triangle_plus_tail()
    cluster = Cluster("c", frozenset(["1", "2", "3", "4", "5"]))
    got = {(e.source, e.target) for e in induced_edges(g, cluster)}
    assert got == {("1", "2"), ("1", "4"), ("2", "3"), ("2", "5"), ("3", "4"), ("4", "5")}


def test_classify_consistent_with_induced_edges():
    g = triangle_plus_tail()
    cluster = Cluster("c", frozenset(["1", "2", "3"]))
    internal = induced_edges(g, cluster)
    for node in cluster.members:
        internal_degree = sum(1 for e in internal if node in (e.source, e.target))
        expected = "introvert" if internal_degree == g.degree(node) else "extrovert"
        assert classify_node(g, cluster, node) == expected


def test_components_deterministic_order():
    g = Graph(["a", "b", "c", "d"], [("a", "b", 1.0), ("c", "d", 1.0)])
    comps = g.connected_components()
    assert sorted(map(sorted, comps)) == [["a", "b"], ["c", "d"]]
