import math

from chordlink.layout import ForceParams, force_layout
from chordlink.model import Graph


def test_single_node_at_origin():
    g = Graph(["a"], [])
    pos = force_layout(g)
    assert pos["a"].x == 0.0 and pos["a"].y == 0.0


def test_deterministic_for_fixed_seed():
    g = Graph(["a", "b", "c", "d"],
              [("a", "b", 1.0), ("b", "c", 1.0), ("c", "d", 1.0), ("d", "a", 1.0)])
    params = ForceParams(seed=7, iterations=120)
    p1 = force_layout(g, params)
    p2 = force_layout(g, params)
    assert all(p1[n].x == p2[n].x and p1[n].y == p2[n].y for n in g.nodes)


def test_different_seed_changes_layout():
    g = Graph(["a", "b", "c"], [("a", "b", 1.0), ("b", "c", 1.0)])
    p1 = force_layout(g, ForceParams(seed=1, iterations=60))
    p2 = force_layout(g, ForceParams(seed=2, iterations=60))
    assert any(p1[n].x != p2[n].x or p1[n].y != p2[n].y for n in g.nodes)


def test_two_connected_nodes_settle_near_rest_length():
    g = Graph(["a", "b"], [("a", "b", 1.0)])
    params = ForceParams(rest_length=80.0, iterations=500, cooling=0.97, seed=3)
    pos = force_layout(g, params)
    d = math.hypot(pos["a"].x - pos["b"].x, pos["a"].y - pos["b"].y)
    assert abs(d - params.rest_length) <= 0.2 * params.rest_length


def test_no_coincident_nodes():
    g = Graph([str(i) for i in range(12)], [])
    pos = force_layout(g, ForceParams(iterations=5, seed=0))
    pts = list(pos.values())
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            assert math.hypot(pts[i].x - pts[j].x, pts[i].y - pts[j].y) > 1e-6


def test_displacement_bounded_by_temperature():
    # per-iteration movement is capped by the cooling temperature, so total
    # drift cannot exceed the geometric series of the schedule
    import numpy as np

    from chordlink import _kernels

    rng = np.random.default_rng(4)
    start = rng.uniform(-100, 100, (6, 2))
    cooling = 0.5
    t0 = 0.08
    end = _kernels.force_iterations(
        start.copy(), np.array([[0, 1], [1, 2], [3, 4]], dtype=np.int64),
        rest_len=80.0, repulsion=1.0, stiffness=1.0,
        iterations=40, cooling=cooling, t0=t0,
    )
    budget = t0 / (1 - cooling)
    drift = np.sqrt(((end - start) ** 2).sum(axis=1)).max()
    assert drift <= budget + 1e-9


def test_components_are_separated():
    g = Graph(["a", "b", "c", "d", "e", "f"],
              [("a", "b", 1.0), ("b", "c", 1.0), ("d", "e", 1.0), ("e", "f", 1.0)])
    pos = force_layout(g, ForceParams(iterations=150, seed=5))
    comp1 = [pos[n] for n in ("a", "b", "c")]
    comp2 = [pos[n] for n in ("d", "e", "f")]
    assert max(p.x for p in comp1) < min(p.x for p in comp2)
