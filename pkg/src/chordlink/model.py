"""Core graph and layout data types shared by every other module.

The graph is immutable after construction and safe to share between
sessions; all layout state lives in :class:`LayoutState`, which is mutated
only by the session pipeline under a single-writer contract.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import GraphError

NodeId = str


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise GraphError(f"non-finite coordinate ({self.x}, {self.y})")

    def distance_to(self, other: "Point") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


@dataclass(frozen=True)
class Edge:
    source: NodeId
    target: NodeId
    weight: float = 1.0

    def other(self, node: NodeId) -> NodeId:
        return self.target if node == self.source else self.source

    def key(self) -> tuple[NodeId, NodeId]:
        """Unordered endpoint pair, normalized."""
        return (self.source, self.target) if self.source <= self.target else (self.target, self.source)


class Graph:
    """Simple undirected weighted graph.

    Rejects self-loops, duplicate edges (per unordered pair) and
    non-positive weights at construction. Node ids are opaque strings;
    labels default to the id.
    """

    def __init__(
        self,
        nodes: list[NodeId],
        edges: list[tuple[NodeId, NodeId, float]] | list[Edge],
        labels: dict[NodeId, str] | None = None,
    ):
        if len(set(nodes)) != len(nodes):
            raise GraphError("duplicate node id")
        self.nodes: tuple[NodeId, ...] = tuple(nodes)
        self._node_set = frozenset(nodes)
        labels = labels or {}
        self.labels: dict[NodeId, str] = {n: labels.get(n, n) for n in nodes}

        built: list[Edge] = []
        seen: set[tuple[NodeId, NodeId]] = set()
        for e in edges:
            if not isinstance(e, Edge):
                e = Edge(e[0], e[1], float(e[2]) if len(e) > 2 else 1.0)
            if e.source == e.target:
                raise GraphError(f"self-loop on node {e.source!r}")
            if e.source not in self._node_set or e.target not in self._node_set:
                raise GraphError(f"edge ({e.source!r}, {e.target!r}) references an undeclared node")
            if e.weight <= 0 or not math.isfinite(e.weight):
                raise GraphError(f"edge ({e.source!r}, {e.target!r}) has non-positive weight {e.weight}")
            k = e.key()
            if k in seen:
                raise GraphError(f"duplicate edge ({e.source!r}, {e.target!r})")
            seen.add(k)
            built.append(e)
        self.edges: tuple[Edge, ...] = tuple(built)

        self._adjacency: dict[NodeId, list[int]] = {n: [] for n in nodes}
        for i, e in enumerate(self.edges):
            self._adjacency[e.source].append(i)
            self._adjacency[e.target].append(i)
        self._edge_index = {e.key(): i for i, e in enumerate(self.edges)}

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_node(self, node: NodeId) -> bool:
        return node in self._node_set

    def incident_edges(self, node: NodeId) -> list[Edge]:
        return [self.edges[i] for i in self._adjacency[node]]

    def incident_edge_ids(self, node: NodeId) -> list[int]:
        return list(self._adjacency[node])

    def neighbors(self, node: NodeId) -> list[NodeId]:
        return [e.other(node) for e in self.incident_edges(node)]

    def degree(self, node: NodeId) -> int:
        return len(self._adjacency[node])

    def edge_id(self, u: NodeId, v: NodeId) -> int:
        key = (u, v) if u <= v else (v, u)
        return self._edge_index[key]

    def connected_components(self) -> list[list[NodeId]]:
        """Components in first-seen node order (deterministic)."""
        seen: set[NodeId] = set()
        comps: list[list[NodeId]] = []
        for start in self.nodes:
            if start in seen:
                continue
            comp = [start]
            seen.add(start)
            stack = [start]
            while stack:
                cur = stack.pop()
                for nb in self.neighbors(cur):
                    if nb not in seen:
                        seen.add(nb)
                        comp.append(nb)
                        stack.append(nb)
            comps.append(comp)
        return comps


ClusterId = str


@dataclass(frozen=True)
class Cluster:
    id: ClusterId
    members: frozenset[NodeId]

    def __post_init__(self):
        if not self.members:
            raise GraphError("cluster must have at least one member")


def classify_node(graph: Graph, cluster: Cluster, node: NodeId) -> str:
    """Return 'extrovert' if the node has a neighbor outside the cluster, else 'introvert'."""
    if node not in cluster.members:
        raise GraphError(f"node {node!r} is not a member of cluster {cluster.id!r}")
    for nb in graph.neighbors(node):
        if nb not in cluster.members:
            return "extrovert"
    return "introvert"


def induced_edges(graph: Graph, cluster: Cluster) -> list[Edge]:
    """Edges with both endpoints inside the cluster, in graph edge order."""
    return [e for e in graph.edges if e.source in cluster.members and e.target in cluster.members]


def induced_edge_ids(graph: Graph, cluster: Cluster) -> list[int]:
    return [i for i, e in enumerate(graph.edges) if e.source in cluster.members and e.target in cluster.members]


@dataclass
class LayoutState:
    """Positions of free nodes plus per-cluster chord-diagram layouts.

    Every node of the graph appears either in ``free_positions`` or in the
    member set of exactly one cluster layout.
    """

    graph: Graph
    free_positions: dict[NodeId, Point] = field(default_factory=dict)
    cluster_layouts: dict[ClusterId, "object"] = field(default_factory=dict)

    def check_partition(self) -> None:
        clustered: set[NodeId] = set()
        for cl in self.cluster_layouts.values():
            members = cl.cluster.members
            if clustered & members:
                raise GraphError("clusters are not pairwise disjoint")
            clustered |= members
        free = set(self.free_positions)
        if free & clustered:
            raise GraphError("node appears both free and clustered")
        if free | clustered != set(self.graph.nodes):
            raise GraphError("node partition does not cover the graph")

    def cluster_of(self, node: NodeId):
        for cl in self.cluster_layouts.values():
            if node in cl.cluster.members:
                return cl
        return None
