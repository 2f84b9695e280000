"""Initial node-link diagram via a spring-electrical force model.

Deterministic for a fixed seed. Connected components are laid out
independently and packed side by side so they do not overlap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .model import Graph, NodeId, Point

NODE_RADIUS = 6.0


@dataclass(frozen=True)
class ForceParams:
    repulsion: float = 1.0
    rest_length: float = 80.0
    stiffness: float = 1.0
    iterations: int = 300
    cooling: float = 0.95
    seed: int = 0

    def __post_init__(self):
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")
        if not (0.0 < self.cooling <= 1.0):
            raise ValueError("cooling must be in (0, 1]")


def _initial_disk(n: int, radius: float, rng: np.random.Generator) -> np.ndarray:
    angles = rng.uniform(0.0, 2.0 * math.pi, n)
    radii = radius * np.sqrt(rng.uniform(0.0, 1.0, n))
    return np.column_stack([radii * np.cos(angles), radii * np.sin(angles)])


def _enforce_min_separation(pos: np.ndarray, min_sep: float) -> np.ndarray:
    # deterministic nudges; desk-scale n so the quadratic scan is fine
    for _ in range(50):
        moved = False
        for i in range(len(pos)):
            for j in range(i + 1, len(pos)):
                d = math.hypot(pos[i, 0] - pos[j, 0], pos[i, 1] - pos[j, 1])
                if d < min_sep:
                    angle = 0.37 * (i * 31 + j * 17)
                    push = (min_sep - d) / 2 + 1e-6
                    dx, dy = math.cos(angle) * push, math.sin(angle) * push
                    pos[i, 0] += dx
                    pos[i, 1] += dy
                    pos[j, 0] -= dx
                    pos[j, 1] -= dy
                    moved = True
        if not moved:
            break
    return pos


def force_layout(graph: Graph, params: ForceParams | None = None) -> dict[NodeId, Point]:
    """Compute free positions for every node of the graph."""
    params = params or ForceParams()
    if not graph.nodes:
        return {}
    rng = np.random.default_rng(params.seed)
    components = graph.connected_components()

    placed: dict[NodeId, tuple[float, float]] = {}
    cursor = None  # right edge of the previously packed component
    margin = 2 * params.rest_length
    for comp in components:
        n = len(comp)
        local = {nid: i for i, nid in enumerate(comp)}
        if n == 1:
            pos = np.zeros((1, 2))
        else:
            spread = params.rest_length * max(1.0, math.sqrt(n))
            pos = _initial_disk(n, spread, rng)
            edges = [
                (local[e.source], local[e.target])
                for e in graph.edges
                if e.source in local and e.target in local
            ]
            earr = np.array(edges, dtype=np.int64) if edges else np.zeros((0, 2), dtype=np.int64)
            pos = _kernels.force_iterations(
                pos, earr, params.rest_length, params.repulsion, params.stiffness,
                params.iterations, params.cooling, t0=params.rest_length,
            )
            pos = _enforce_min_separation(pos, min_sep=NODE_RADIUS * 0.5)
        pos = pos - pos.mean(axis=0)  # first component stays centered at the origin
        half_w = float(np.abs(pos[:, 0]).max()) if n > 1 else 0.0
        center_x = 0.0 if cursor is None else cursor + margin + half_w
        for nid in comp:
            x, y = pos[local[nid]]
            placed[nid] = (x + center_x, y)
        cursor = center_x + half_w

    return {n: Point(*placed[n]) for n in graph.nodes}
