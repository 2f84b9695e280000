"""Session state machine: runs the four-phase cluster pipeline and the
interactive operations (select, add, collapse/expand, move) while keeping
every node and edge outside the touched region geometrically fixed."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .chords import Chord, brute_force_chord_oracle, distribute_endpoints, greedy_insert
from .errors import SessionError
from .layout import NODE_RADIUS, ForceParams, force_layout
from .merging import Arc, assign_colors, merge_runs
from .model import Cluster, ClusterId, Graph, LayoutState, NodeId, Point, induced_edge_ids
from .permutation import (
    Group,
    brute_force_permutation_oracle,
    build_groups,
    group_sequence_cost,
    permute_groups,
)
from .region import ClusterRegion, fit_region, is_circularly_separable, radial_displace
from .replication import Copy, norm_angle, replicate, segment_circle_point


@dataclass
class Attachment:
    arc_index: int
    angle: float


@dataclass
class ClusterLayout:
    cluster: Cluster
    region: ClusterRegion
    arcs: list[Arc]
    chords: list[Chord]
    attachments: dict[int, Attachment]  # external edge id -> boundary point
    member_positions: dict[NodeId, Point]  # positions the members had when clustered
    colors: dict[NodeId, str] = field(default_factory=dict)
    collapsed: bool = False
    boundary_mismatch_cost: int = 0
    chord_cost: float = 0.0
    arcs_shrunk: bool = False

    @property
    def glyph_radius(self) -> float:
        return NODE_RADIUS * math.sqrt(len(self.cluster.members))

    def point_at(self, angle: float) -> Point:
        c = self.region.center
        return Point(c.x + self.region.radius * math.cos(angle),
                     c.y + self.region.radius * math.sin(angle))

    def attachment_point(self, edge_id: int) -> Point:
        if self.collapsed:
            return self.region.center
        return self.point_at(self.attachments[edge_id].angle)


@dataclass
class LabelPolicy:
    mode: str = "all"  # all | none | auto
    overrides: dict[NodeId, bool] = field(default_factory=dict)

    MIN_ZOOM = 0.1


def label_policy(state: LayoutState, policy: LabelPolicy, zoom: float = 1.0) -> set[NodeId]:
    """Visible label set for the given policy and zoom level. Auto mode hides
    low-degree labels as the view zooms out; per-node overrides always win."""
    graph = state.graph
    if policy.mode == "all":
        visible = set(graph.nodes)
    elif policy.mode == "none":
        visible = set()
    elif policy.mode == "auto":
        max_deg = max((graph.degree(n) for n in graph.nodes), default=0)
        z = max(zoom, LabelPolicy.MIN_ZOOM)
        if z >= 1.0 or max_deg == 0:
            threshold = 0
        else:
            frac = (1.0 - z) / (1.0 - LabelPolicy.MIN_ZOOM)
            threshold = math.ceil(max_deg * frac)
        visible = {n for n in graph.nodes if graph.degree(n) >= threshold}
    else:
        raise SessionError(f"unknown label policy {policy.mode!r}")
    for node, flag in policy.overrides.items():
        if flag:
            visible.add(node)
        else:
            visible.discard(node)
    return visible


class Session:
    """Single-writer owner of a LayoutState; every mutating call corresponds
    to one protocol command."""

    def __init__(self, permutation: str = "dp", chords: str = "greedy"):
        if permutation not in ("dp", "oracle", "none"):
            raise SessionError(f"unknown permutation strategy {permutation!r}")
        if chords not in ("greedy", "oracle"):
            raise SessionError(f"unknown chord strategy {chords!r}")
        self.permutation_strategy = permutation
        self.chord_strategy = chords
        self.state: LayoutState | None = None
        self.label_policy = LabelPolicy()
        self._next_cluster = 0

    # -- loading ------------------------------------------------------------

    def load_graph(self, graph: Graph) -> None:
        self.state = LayoutState(graph, {}, {})
        self._next_cluster = 0

    def run_layout(self, params: ForceParams | None = None) -> None:
        st = self._require_state()
        if st.cluster_layouts:
            raise SessionError("cannot recompute the base layout with active clusters")
        st.free_positions = force_layout(st.graph, params)

    def _require_state(self) -> LayoutState:
        if self.state is None:
            raise SessionError("no graph loaded")
        return self.state

    # -- helpers ------------------------------------------------------------

    def _node_is_free(self, node: NodeId) -> bool:
        st = self._require_state()
        return node in st.free_positions

    def _outside_endpoint(self, edge_id: int, inside_node: NodeId) -> Point:
        """Where the given external edge currently leaves from, outside the
        cluster being (re)built."""
        st = self._require_state()
        edge = st.graph.edges[edge_id]
        u = edge.other(inside_node)
        if u in st.free_positions:
            return st.free_positions[u]
        owner = st.cluster_of(u)
        if owner is None:
            raise SessionError(f"node {u!r} has no position")
        return owner.attachment_point(edge_id)

    def _origin_key_fn(self):
        st = self._require_state()

        def key(cp: Copy):
            u = cp.external_neighbor
            if u in st.free_positions:
                return u
            # edges from another chord diagram leave from per-edge attachment
            # points, so they are not interchangeable
            return ("edge", cp.external_edge_id)

        return key

    # -- cluster pipeline ----------------------------------------------------

    def _build_cluster_layout(
        self,
        cluster: Cluster,
        region: ClusterRegion,
        member_positions: dict[NodeId, Point],
    ) -> ClusterLayout:
        st = self._require_state()
        graph = st.graph
        outside = {}
        for w in cluster.members:
            for eid in graph.incident_edge_ids(w):
                if graph.edges[eid].other(w) not in cluster.members:
                    outside[eid] = self._outside_endpoint(eid, w)
        copies = replicate(graph, cluster, region, member_positions, outside)

        groups = build_groups(copies, origin_key=self._origin_key_fn())
        if self.permutation_strategy == "dp":
            perm = permute_groups(groups)
        elif self.permutation_strategy == "oracle":
            perm = brute_force_permutation_oracle(groups)
        else:
            orders = [[cp.source_node for cp in g.members] for g in groups]
            perm = _identity_permutation(groups, orders)

        edge_ids = induced_edge_ids(graph, cluster)
        intra_degree: dict[NodeId, float] = {}
        for eid in edge_ids:
            e = graph.edges[eid]
            intra_degree[e.source] = intra_degree.get(e.source, 0) + 1
            intra_degree[e.target] = intra_degree.get(e.target, 0) + 1

        merged = merge_runs(perm.copies, intra_degree)
        arcs = merged.arcs
        colors = assign_colors(arcs)

        internal = [(eid, graph.edges[eid]) for eid in edge_ids]
        if self.chord_strategy == "greedy":
            chord_set = greedy_insert(arcs, internal)
        else:
            chord_set = brute_force_chord_oracle(arcs, internal)
        for arc in arcs:
            arc.in_deg = 0
        for ch in chord_set.chords:
            arcs[ch.from_arc].in_deg += 1
            arcs[ch.to_arc].in_deg += 1
        final_chords = distribute_endpoints(chord_set, arcs)

        copy_arc = {}
        for idx, arc in enumerate(arcs):
            for cp in arc.copies:
                copy_arc[cp.copy_id] = idx
        attachments = {
            cp.external_edge_id: Attachment(copy_arc[cp.copy_id], cp.angle)
            for cp in perm.copies
            if cp.external_edge_id is not None
        }

        return ClusterLayout(
            cluster=cluster,
            region=region,
            arcs=arcs,
            chords=final_chords,
            attachments=attachments,
            member_positions=dict(member_positions),
            colors=colors,
            boundary_mismatch_cost=perm.boundary_mismatch_cost,
            chord_cost=chord_set.cost,
            arcs_shrunk=merged.shrunk,
        )

    # -- commands -----------------------------------------------------------

    def select_cluster(self, node_ids: list[NodeId], cluster_id: ClusterId | None = None) -> ClusterId:
        st = self._require_state()
        if not node_ids:
            raise SessionError("empty selection")
        if len(set(node_ids)) != len(node_ids):
            raise SessionError("duplicate node ids in selection")
        for n in node_ids:
            if not st.graph.has_node(n):
                raise SessionError(f"unknown node {n!r}")
            if n not in st.free_positions:
                raise SessionError(f"node {n!r} is already clustered")
        if cluster_id is None:
            cluster_id = f"c{self._next_cluster}"
            self._next_cluster += 1
        if cluster_id in st.cluster_layouts:
            raise SessionError(f"cluster id {cluster_id!r} already in use")

        cluster = Cluster(cluster_id, frozenset(node_ids))
        region = fit_region(st.free_positions, cluster)
        saved_positions = dict(st.free_positions)
        try:
            if not is_circularly_separable(st.free_positions, region, cluster):
                st.free_positions = radial_displace(st.free_positions, region, cluster)
            member_positions = {n: st.free_positions[n] for n in node_ids}
            layout = self._build_cluster_layout(cluster, region, member_positions)
        except Exception:
            st.free_positions = saved_positions
            raise
        for n in node_ids:
            del st.free_positions[n]
        st.cluster_layouts[cluster_id] = layout
        return cluster_id

    def select_rectangle(self, x0: float, y0: float, x1: float, y1: float) -> ClusterId:
        st = self._require_state()
        lo_x, hi_x = min(x0, x1), max(x0, x1)
        lo_y, hi_y = min(y0, y1), max(y0, y1)
        ids = [n for n, p in st.free_positions.items()
               if lo_x <= p.x <= hi_x and lo_y <= p.y <= hi_y]
        if not ids:
            raise SessionError("selection contains no free nodes")
        return self.select_cluster(sorted(ids))

    def select_lasso(self, points: list[tuple[float, float]]) -> ClusterId:
        st = self._require_state()
        if len(points) < 3:
            raise SessionError("lasso needs at least 3 points")
        ids = [n for n, p in st.free_positions.items() if _point_in_polygon(p, points)]
        if not ids:
            raise SessionError("selection contains no free nodes")
        return self.select_cluster(sorted(ids))

    def add_node_to_cluster(self, cluster_id: ClusterId, node_id: NodeId) -> None:
        st = self._require_state()
        layout = self._get_cluster(cluster_id)
        if layout.collapsed:
            raise SessionError("cannot drop a node into a collapsed cluster")
        if node_id not in st.free_positions:
            raise SessionError(f"node {node_id!r} is not free")

        old = st.free_positions[node_id]
        region = layout.region
        c = region.center
        d = math.hypot(old.x - c.x, old.y - c.y)
        if d < 1e-12:
            inner = Point(c.x + region.radius / 2, c.y)
        else:
            scale = (region.radius / 2) / d
            inner = Point(c.x + (old.x - c.x) * scale, c.y + (old.y - c.y) * scale)

        members = set(layout.cluster.members) | {node_id}
        cluster = Cluster(cluster_id, frozenset(members))
        positions = dict(layout.member_positions)
        positions[node_id] = inner

        del st.free_positions[node_id]
        del st.cluster_layouts[cluster_id]
        try:
            new_layout = self._build_cluster_layout(cluster, region, positions)
        except Exception:
            st.free_positions[node_id] = old
            st.cluster_layouts[cluster_id] = layout
            raise
        st.cluster_layouts[cluster_id] = new_layout

    def remove_cluster(self, cluster_id: ClusterId) -> None:
        st = self._require_state()
        layout = self._get_cluster(cluster_id)
        for n, p in layout.member_positions.items():
            st.free_positions[n] = p
        del st.cluster_layouts[cluster_id]

    def collapse(self, cluster_id: ClusterId) -> None:
        layout = self._get_cluster(cluster_id)
        if layout.collapsed:
            raise SessionError(f"cluster {cluster_id!r} is already collapsed")
        layout.collapsed = True

    def expand(self, cluster_id: ClusterId) -> None:
        layout = self._get_cluster(cluster_id)
        if not layout.collapsed:
            raise SessionError(f"cluster {cluster_id!r} is not collapsed")
        layout.collapsed = False

    def move_node(self, node_id: NodeId, x: float, y: float) -> None:
        st = self._require_state()
        if node_id not in st.free_positions:
            raise SessionError(f"node {node_id!r} is clustered; move the cluster instead")
        st.free_positions[node_id] = Point(x, y)
        # re-truncate the node's edges against every chord diagram they enter
        for eid in st.graph.incident_edge_ids(node_id):
            other = st.graph.edges[eid].other(node_id)
            owner = st.cluster_of(other)
            if owner is None or eid not in owner.attachments:
                continue
            self._retruncate(owner, eid, other)

    def _retruncate(self, layout: ClusterLayout, edge_id: int, member: NodeId) -> None:
        region = layout.region
        c = region.center
        p_out = self._outside_endpoint(edge_id, member)
        d = math.hypot(p_out.x - c.x, p_out.y - c.y)
        if d <= region.radius:
            angle = norm_angle(math.atan2(p_out.y - c.y, p_out.x - c.x)) if d > 1e-12 else 0.0
        else:
            hit = segment_circle_point(p_out, layout.member_positions[member], region)
            angle = norm_angle(math.atan2(hit.y - c.y, hit.x - c.x))
        att = layout.attachments[edge_id]
        arc = layout.arcs[att.arc_index]
        inset = min(1e-3, arc.span / 4)
        rel = (angle - arc.start_angle) % (2 * math.pi)
        if rel > arc.span:  # keep the endpoint on its arc
            mid_gap = ((2 * math.pi) + arc.span) / 2
            angle = norm_angle(arc.start_angle + (inset if rel > mid_gap else arc.span - inset))
        att.angle = angle

    def move_cluster(self, cluster_id: ClusterId, dx: float, dy: float) -> None:
        layout = self._get_cluster(cluster_id)
        layout.region = ClusterRegion(
            Point(layout.region.center.x + dx, layout.region.center.y + dy),
            layout.region.radius,
        )
        layout.member_positions = {
            n: Point(p.x + dx, p.y + dy) for n, p in layout.member_positions.items()
        }

    def set_label_policy(self, mode: str, overrides: dict[NodeId, bool] | None = None) -> None:
        if mode not in ("all", "none", "auto"):
            raise SessionError(f"unknown label policy {mode!r}")
        self.label_policy = LabelPolicy(mode, dict(overrides or {}))

    def _get_cluster(self, cluster_id: ClusterId) -> ClusterLayout:
        st = self._require_state()
        layout = st.cluster_layouts.get(cluster_id)
        if layout is None:
            raise SessionError(f"unknown cluster {cluster_id!r}")
        return layout


def _identity_permutation(groups: list[Group], orders: list[list[NodeId]]):
    from .permutation import PermutationResult, _realize

    cost = group_sequence_cost(orders)
    copies = _realize(groups, orders)
    return PermutationResult(copies, cost, all(g.contiguous for g in groups), orders)


def _point_in_polygon(p: Point, poly: list[tuple[float, float]]) -> bool:
    """Even-odd rule; the polygon closes itself between last and first point."""
    inside = False
    n = len(poly)
    for i in range(n):
        x1, y1 = poly[i]
        x2, y2 = poly[(i + 1) % n]
        if (y1 > p.y) != (y2 > p.y):
            x_cross = x1 + (p.y - y1) * (x2 - x1) / (y2 - y1)
            if p.x < x_cross:
                inside = not inside
    return inside
