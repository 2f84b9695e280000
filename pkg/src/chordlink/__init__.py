"""ChordLink-style hybrid graph layout engine: user-selected dense
communities are redrawn as chord diagrams with node replication while the
rest of the node-link diagram stays fixed."""

from .model import Cluster, Edge, Graph, LayoutState, Point, classify_node, induced_edges

__version__ = "0.1.0"

__all__ = [
    "Cluster",
    "Edge",
    "Graph",
    "LayoutState",
    "Point",
    "classify_node",
    "induced_edges",
    "__version__",
]
