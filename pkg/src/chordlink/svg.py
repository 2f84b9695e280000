"""SVG 1.1 export: free nodes, weight-classed edges, colored arcs, and
gradient chords bowed toward each region center."""

from __future__ import annotations

import math

import numpy as np

from .layout import NODE_RADIUS
from .model import LayoutState, Point
from .session import ClusterLayout, LabelPolicy, label_policy

EDGE_WIDTHS = [0.8, 1.6, 2.4, 3.2, 4.0]
ARC_STROKE = 7.0
NODE_FILL = "#4c78a8"
EDGE_COLOR = "#9aa0a6"
MARGIN = 40.0


def weight_thresholds(weights: list[float]) -> list[float] | None:
    """Quantile cut points mapping weights into the 5 width classes; None when
    every weight is equal (everything lands in the middle class)."""
    if not weights or max(weights) == min(weights):
        return None
    arr = np.asarray(weights, dtype=float)
    return [float(np.quantile(arr, q)) for q in (0.2, 0.4, 0.6, 0.8)]


def thickness_class(weight: float, thresholds: list[float] | None) -> int:
    if thresholds is None:
        return 2
    return int(np.searchsorted(np.asarray(thresholds), weight, side="right"))


def _fmt(x: float) -> str:
    return f"{x:.3f}"


def _arc_path(cl: ClusterLayout, start: float, end: float) -> str:
    c, r = cl.region.center, cl.region.radius
    x1, y1 = c.x + r * math.cos(start), c.y + r * math.sin(start)
    x2, y2 = c.x + r * math.cos(end), c.y + r * math.sin(end)
    large = 1 if (end - start) > math.pi else 0
    return (f"M {_fmt(x1)} {_fmt(y1)} "
            f"A {_fmt(r)} {_fmt(r)} 0 {large} 1 {_fmt(x2)} {_fmt(y2)}")


def _chord_path(cl: ClusterLayout, from_angle: float, to_angle: float) -> str:
    p1 = cl.point_at(from_angle)
    p2 = cl.point_at(to_angle)
    mx, my = (p1.x + p2.x) / 2, (p1.y + p2.y) / 2
    length = math.hypot(p2.x - p1.x, p2.y - p1.y)
    c = cl.region.center
    dx, dy = c.x - mx, c.y - my
    norm = math.hypot(dx, dy)
    if norm < 1e-9:
        # diameter chord: bow to the left of the travel direction
        dx, dy = -(p2.y - p1.y) / max(length, 1e-9), (p2.x - p1.x) / max(length, 1e-9)
        norm = 1.0
    sag = 0.15 * length
    ctrl_x = mx + dx / norm * 2 * sag
    ctrl_y = my + dy / norm * 2 * sag
    return (f"M {_fmt(p1.x)} {_fmt(p1.y)} "
            f"Q {_fmt(ctrl_x)} {_fmt(ctrl_y)} {_fmt(p2.x)} {_fmt(p2.y)}")


def _edge_drawn_endpoints(state: LayoutState, edge_id: int) -> tuple[Point, Point] | None:
    """Current drawn endpoints of an edge, or None when it is internal to a
    cluster (chords render it) or hidden inside a collapsed cluster."""
    edge = state.graph.edges[edge_id]
    ends: list[Point] = []
    owners: list[ClusterLayout | None] = []
    for node in (edge.source, edge.target):
        if node in state.free_positions:
            ends.append(state.free_positions[node])
            owners.append(None)
        else:
            cl = state.cluster_of(node)
            owners.append(cl)
            ends.append(None)
    if owners[0] is not None and owners[0] is owners[1]:
        return None  # internal edge
    for i in (0, 1):
        cl = owners[i]
        if cl is None:
            continue
        if cl.collapsed or edge_id not in cl.attachments:
            ends[i] = cl.region.center
        else:
            ends[i] = cl.attachment_point(edge_id)
    return ends[0], ends[1]


def _bounds(state: LayoutState) -> tuple[float, float, float, float]:
    xs, ys = [], []
    for p in state.free_positions.values():
        xs.append(p.x)
        ys.append(p.y)
    for cl in state.cluster_layouts.values():
        r = cl.region.radius if not cl.collapsed else cl.glyph_radius
        xs.extend([cl.region.center.x - r, cl.region.center.x + r])
        ys.extend([cl.region.center.y - r, cl.region.center.y + r])
    if not xs:
        xs, ys = [0.0], [0.0]
    return min(xs), min(ys), max(xs), max(ys)


def export_svg(state: LayoutState, policy: LabelPolicy | None = None, zoom: float = 1.0) -> str:
    policy = policy or LabelPolicy()
    graph = state.graph
    visible_labels = label_policy(state, policy, zoom)
    thresholds = weight_thresholds([e.weight for e in graph.edges])

    x0, y0, x1, y1 = _bounds(state)
    x0, y0, x1, y1 = x0 - MARGIN, y0 - MARGIN, x1 + MARGIN, y1 + MARGIN

    parts: list[str] = []
    parts.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{_fmt(x0)} {_fmt(y0)} {_fmt(x1 - x0)} {_fmt(y1 - y0)}">'
    )

    defs: list[str] = []
    chord_elems: list[str] = []
    for cid in sorted(state.cluster_layouts):
        cl = state.cluster_layouts[cid]
        if cl.collapsed:
            continue
        for i, ch in enumerate(cl.chords):
            color_from = cl.colors.get(ch.edge[0], "#888888")
            color_to = cl.colors.get(ch.edge[1], "#888888")
            gid = f"grad-{cid}-{i}"
            p1 = cl.point_at(ch.from_angle)
            p2 = cl.point_at(ch.to_angle)
            defs.append(
                f'<linearGradient id="{gid}" gradientUnits="userSpaceOnUse" '
                f'x1="{_fmt(p1.x)}" y1="{_fmt(p1.y)}" x2="{_fmt(p2.x)}" y2="{_fmt(p2.y)}">'
                f'<stop offset="0" stop-color="{color_from}"/>'
                f'<stop offset="1" stop-color="{color_to}"/>'
                f"</linearGradient>"
            )
            weight = graph.edges[ch.edge_id].weight
            width = EDGE_WIDTHS[thickness_class(weight, thresholds)]
            chord_elems.append(
                f'<path class="chord" d="{_chord_path(cl, ch.from_angle, ch.to_angle)}" '
                f'fill="none" stroke="url(#{gid})" stroke-width="{_fmt(width)}"/>'
            )
    if defs:
        parts.append("<defs>" + "".join(defs) + "</defs>")

    # edges outside cluster interiors
    parts.append('<g class="edges">')
    for eid, edge in enumerate(graph.edges):
        drawn = _edge_drawn_endpoints(state, eid)
        if drawn is None:
            continue
        a, b = drawn
        width = EDGE_WIDTHS[thickness_class(edge.weight, thresholds)]
        parts.append(
            f'<line x1="{_fmt(a.x)}" y1="{_fmt(a.y)}" x2="{_fmt(b.x)}" y2="{_fmt(b.y)}" '
            f'stroke="{EDGE_COLOR}" stroke-width="{_fmt(width)}"/>'
        )
    parts.append("</g>")

    # chord diagrams
    for cid in sorted(state.cluster_layouts):
        cl = state.cluster_layouts[cid]
        parts.append(f'<g class="cluster" data-cluster="{cid}">')
        if cl.collapsed:
            c = cl.region.center
            parts.append(
                f'<circle class="cluster-node" cx="{_fmt(c.x)}" cy="{_fmt(c.y)}" '
                f'r="{_fmt(cl.glyph_radius)}" fill="{NODE_FILL}" stroke="#333333"/>'
            )
        else:
            for arc in cl.arcs:
                parts.append(
                    f'<path class="arc" data-node="{arc.source_node}" '
                    f'd="{_arc_path(cl, arc.start_angle, arc.end_angle)}" '
                    f'fill="none" stroke="{arc.color}" stroke-width="{_fmt(ARC_STROKE)}"/>'
                )
        parts.append("</g>")
    if chord_elems:
        parts.append('<g class="chords">' + "".join(chord_elems) + "</g>")

    # free nodes
    parts.append('<g class="nodes">')
    for n in sorted(state.free_positions):
        p = state.free_positions[n]
        parts.append(
            f'<circle class="node" data-node="{n}" cx="{_fmt(p.x)}" cy="{_fmt(p.y)}" '
            f'r="{_fmt(NODE_RADIUS)}" fill="{NODE_FILL}"/>'
        )
    parts.append("</g>")

    # labels
    parts.append('<g class="labels">')
    for n in sorted(visible_labels):
        text = _escape(graph.labels[n])
        if n in state.free_positions:
            p = state.free_positions[n]
            parts.append(
                f'<text x="{_fmt(p.x + NODE_RADIUS + 2)}" y="{_fmt(p.y - NODE_RADIUS)}" '
                f'font-size="10">{text}</text>'
            )
        else:
            cl = state.cluster_of(n)
            if cl is None or cl.collapsed:
                continue
            arcs = [a for a in cl.arcs if a.source_node == n]
            if not arcs:
                continue
            longest = max(arcs, key=lambda a: a.span)
            p = cl.point_at(longest.midpoint)
            c = cl.region.center
            dx, dy = p.x - c.x, p.y - c.y
            norm = math.hypot(dx, dy) or 1.0
            parts.append(
                f'<text x="{_fmt(p.x + dx / norm * 12)}" y="{_fmt(p.y + dy / norm * 12)}" '
                f'font-size="10">{text}</text>'
            )
    parts.append("</g>")

    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
