"""Circular region fitting and the radial deformation applied when a
selection is not circularly separable."""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass

from .layout import NODE_RADIUS
from .model import Cluster, NodeId, Point

MIN_REGION_RADIUS = 4 * NODE_RADIUS
MARGIN = 1.05
CENTER_EPS = 1e-9


@dataclass(frozen=True)
class ClusterRegion:
    center: Point
    radius: float


def fit_region(free_positions: dict[NodeId, Point], cluster: Cluster) -> ClusterRegion:
    """Fit the region disk: barycenter center, max member distance (inflated
    by a small margin) as radius.

    Degenerate selections (a single member, or all members coincident) fall
    back to a fixed minimum radius. If a member sits on the barycenter the
    center is nudged by a tiny deterministic offset so that every member has
    a well-defined angle.
    """
    members = sorted(cluster.members)
    pts = [free_positions[m] for m in members]
    cx = sum(p.x for p in pts) / len(pts)
    cy = sum(p.y for p in pts) / len(pts)
    max_dist = max(math.hypot(p.x - cx, p.y - cy) for p in pts)
    if max_dist <= 1e-12:
        radius = MIN_REGION_RADIUS
    else:
        radius = MARGIN * max_dist

    attempt = 0
    golden = 2.399963229728653
    while any(math.hypot(p.x - cx, p.y - cy) < CENTER_EPS for p in pts):
        offset = 1e-6 * radius * (attempt + 1)
        cx += offset * math.cos(golden * attempt)
        cy += offset * math.sin(golden * attempt)
        attempt += 1
    return ClusterRegion(Point(cx, cy), radius)


def _escape_angle(node: NodeId) -> float:
    """Deterministic pseudo-random ray for a node sitting exactly on the center."""
    digest = hashlib.sha256(node.encode("utf-8")).digest()
    return (int.from_bytes(digest[:8], "big") / 2**64) * 2 * math.pi


def displaced_distance(d: float, radius: float) -> float:
    """Piecewise-linear radial map: nodes closer than the 2R cutoff move
    outward by R*(1 - d/2R); beyond the cutoff nothing moves. Strictly
    increasing, so the radial order of nodes is preserved, and f(d) > R for
    every d > 0, so every displaced node leaves the disk."""
    cutoff = 2.0 * radius
    if d >= cutoff:
        return d
    return d + radius * (1.0 - d / cutoff)


def radial_displace(
    free_positions: dict[NodeId, Point],
    region: ClusterRegion,
    cluster: Cluster,
) -> dict[NodeId, Point]:
    """Push every free non-member inside the 2R cutoff radially out of the disk.

    Angular coordinates are untouched; a non-member exactly at the center is
    sent along a ray derived from its id.
    """
    c = region.center
    dists = {
        node: math.hypot(p.x - c.x, p.y - c.y)
        for node, p in free_positions.items()
        if node not in cluster.members
    }
    positive = [d for d in dists.values() if d > 0.0]
    center_eps = min(positive) / 2 if positive else region.radius * 1e-12

    out: dict[NodeId, Point] = {}
    for node, p in free_positions.items():
        if node in cluster.members:
            out[node] = p
            continue
        d = dists[node]
        if d >= 2.0 * region.radius:
            out[node] = p
        elif d == 0.0:
            angle = _escape_angle(node)
            nd = displaced_distance(center_eps, region.radius)
            out[node] = Point(c.x + nd * math.cos(angle), c.y + nd * math.sin(angle))
        else:
            nd = displaced_distance(d, region.radius)
            out[node] = Point(c.x + (p.x - c.x) * nd / d, c.y + (p.y - c.y) * nd / d)
    return out


def is_circularly_separable(
    free_positions: dict[NodeId, Point],
    region: ClusterRegion,
    cluster: Cluster,
) -> bool:
    """True when no free non-member lies inside the region disk."""
    c = region.center
    for node, p in free_positions.items():
        if node in cluster.members:
            continue
        if math.hypot(p.x - c.x, p.y - c.y) <= region.radius:
            return False
    return True
