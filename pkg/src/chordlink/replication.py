"""Boundary copies: one per external edge of each extrovert member, one per
introvert member, placed on the region circle."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import InternalInvariantError
from .model import Cluster, Graph, NodeId, Point
from .region import ClusterRegion

TWO_PI = 2.0 * math.pi
COINCIDENT_EPS = 1e-12
NUDGE = 1e-4


def norm_angle(a: float) -> float:
    a = math.fmod(a, TWO_PI)
    return a + TWO_PI if a < 0 else a


@dataclass(frozen=True)
class Copy:
    copy_id: int
    source_node: NodeId
    angle: float  # radians CCW from +x axis, in [0, 2pi)
    external_neighbor: NodeId | None = None
    external_edge_id: int | None = None

    @property
    def is_introvert_copy(self) -> bool:
        return self.external_neighbor is None


def segment_circle_point(p_out: Point, p_in: Point, region: ClusterRegion) -> Point:
    """Intersection of the segment from an outside point to an inside point
    with the region circle (unique because exactly one endpoint is inside)."""
    c, r = region.center, region.radius
    dx, dy = p_in.x - p_out.x, p_in.y - p_out.y
    fx, fy = p_out.x - c.x, p_out.y - c.y
    a = dx * dx + dy * dy
    b = 2 * (fx * dx + fy * dy)
    cc = fx * fx + fy * fy - r * r
    disc = b * b - 4 * a * cc
    if a <= 0 or disc < 0:
        raise InternalInvariantError("segment does not reach the region circle")
    sq = math.sqrt(disc)
    t = (-b - sq) / (2 * a)  # first crossing walking from the outside point
    if not (-1e-9 <= t <= 1.0 + 1e-9):
        t = (-b + sq) / (2 * a)
    if not (-1e-9 <= t <= 1.0 + 1e-9):
        raise InternalInvariantError("segment does not cross the region circle")
    return Point(p_out.x + t * dx, p_out.y + t * dy)


def replicate(
    graph: Graph,
    cluster: Cluster,
    region: ClusterRegion,
    member_positions: dict[NodeId, Point],
    outside_endpoints: dict[int, Point],
) -> list[Copy]:
    """Build the circular copy sequence for a cluster.

    ``member_positions`` holds the (pre-clustering) positions of the members;
    ``outside_endpoints`` maps each external edge id to the geometric point
    the edge currently leaves from on the outside.

    Raises :class:`InternalInvariantError` when an outside endpoint lies
    inside the disk (the selection preconditions were violated).
    """
    c, r = region.center, region.radius
    raw: list[tuple[Copy, float]] = []  # copy + tie-break angle of its outside endpoint
    for w in sorted(cluster.members):
        p_w = member_positions[w]
        external = [
            eid for eid in graph.incident_edge_ids(w)
            if graph.edges[eid].other(w) not in cluster.members
        ]
        if not external:
            d = math.hypot(p_w.x - c.x, p_w.y - c.y)
            if d < 1e-12:
                raise InternalInvariantError(f"member {w!r} sits on the region center")
            angle = norm_angle(math.atan2(p_w.y - c.y, p_w.x - c.x))
            raw.append((Copy(-1, w, angle), angle))
            continue
        for eid in external:
            u = graph.edges[eid].other(w)
            p_u = outside_endpoints[eid]
            if math.hypot(p_u.x - c.x, p_u.y - c.y) <= r:
                raise InternalInvariantError(
                    f"outside endpoint of edge ({u!r}, {w!r}) lies inside the region"
                )
            hit = segment_circle_point(p_u, p_w, region)
            angle = norm_angle(math.atan2(hit.y - c.y, hit.x - c.x))
            neighbor_angle = norm_angle(math.atan2(p_u.y - c.y, p_u.x - c.x))
            raw.append((Copy(-1, w, angle, external_neighbor=u, external_edge_id=eid), neighbor_angle))

    ordered = _separate_coincident(raw)
    return [replace(cp, copy_id=i) for i, cp in enumerate(ordered)]


def _separate_coincident(raw: list[tuple[Copy, float]]) -> list[Copy]:
    """Sort by angle and nudge exact ties apart, keeping ties ordered by the
    angle of their outside endpoint (so truncated segments stay untangled)."""
    ordered = sorted(raw, key=lambda item: (item[0].angle, item[1], item[0].source_node))
    out: list[Copy] = []
    prev = None
    for cp, _ in ordered:
        angle = cp.angle
        if prev is not None and angle <= prev + COINCIDENT_EPS:
            angle = prev + NUDGE
            cp = replace(cp, angle=norm_angle(angle))
        out.append(cp)
        prev = angle
    return out
