import math
from pathlib import Path

import numpy as np
import pytest

from chordlink import _kernels
from chordlink.gml import parse_gml
from chordlink.layout import ForceParams
from chordlink.merging import Arc
from chordlink.model import Point
from chordlink.replication import Copy
from chordlink.session import Session

DATA = Path(__file__).parent / "data"
TWO_PI = 2.0 * math.pi


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Trigger JIT compilation once so timing assertions measure the
    algorithms, not compiler startup."""
    _kernels.force_iterations(
        np.zeros((3, 2)), np.array([[0, 1]], dtype=np.int64),
        rest_len=1.0, repulsion=1.0, stiffness=1.0, iterations=2, cooling=0.9, t0=1.0,
    )
    _kernels.permutation_best_costs([[0, 1], [1, 0]], 2)
    _kernels.cost_against_set(0.0, math.pi, np.array([1.0]), np.array([4.0]))


@pytest.fixture(scope="session")
def corpus_graph():
    return parse_gml((DATA / "fiscal_scale.gml").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def corpus_session(corpus_graph):
    session = Session()
    session.load_graph(corpus_graph)
    session.run_layout(ForceParams(iterations=200, seed=42))
    return session


# ---------------------------------------------------------------------------
# instance builders
# ---------------------------------------------------------------------------

def copies_from_groups(groups_spec):
    """Build a contiguous copy sequence from [(neighbor, [node, ...]), ...];
    neighbor None makes introvert singleton copies. Angles are evenly spaced
    in the given order."""
    flat = []
    for neighbor, nodes in groups_spec:
        for node in nodes:
            flat.append((node, neighbor))
    n = len(flat)
    out = []
    for i, (node, neighbor) in enumerate(flat):
        out.append(Copy(
            copy_id=i,
            source_node=node,
            angle=i * TWO_PI / n,
            external_neighbor=neighbor,
            external_edge_id=i if neighbor is not None else None,
        ))
    return out


def arcs_from_order(order, width_frac=0.5):
    """Arcs evenly spaced on the circle from labels like '1a' (node '1');
    a bare label is its own node id."""
    n = len(order)
    arcs = []
    for i, label in enumerate(order):
        node = label[:-1] if len(label) > 1 and label[-1].isalpha() else label
        mid = i * TWO_PI / n
        half = width_frac * (TWO_PI / n) / 2
        arcs.append(Arc(node, (mid - half) % TWO_PI, (mid - half) % TWO_PI + 2 * half))
    return arcs


# ---------------------------------------------------------------------------
# independent geometry checks
# ---------------------------------------------------------------------------

def circle_point(angle, center=Point(0.0, 0.0), radius=1.0):
    return Point(center.x + radius * math.cos(angle), center.y + radius * math.sin(angle))


def segments_properly_intersect(p1, p2, p3, p4) -> bool:
    """Strict interior crossing of two segments (shared endpoints excluded)."""

    def orient(a, b, c):
        return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)

    d1 = orient(p3, p4, p1)
    d2 = orient(p3, p4, p2)
    d3 = orient(p1, p2, p3)
    d4 = orient(p1, p2, p4)
    return d1 * d2 < 0 and d3 * d4 < 0


def point_segment_distance(p, a, b) -> float:
    vx, vy = b.x - a.x, b.y - a.y
    L2 = vx * vx + vy * vy
    if L2 == 0:
        return math.hypot(p.x - a.x, p.y - a.y)
    t = max(0.0, min(1.0, ((p.x - a.x) * vx + (p.y - a.y) * vy) / L2))
    return math.hypot(p.x - (a.x + t * vx), p.y - (a.y + t * vy))
