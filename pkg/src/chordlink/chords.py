"""Chord selection: one representative arc pair per internal edge, chosen
greedily to minimize the crossing cost (0 for non-crossing pairs, otherwise
1 minus the crossing angle over pi, which lies in [0.5, 1))."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import InternalInvariantError, OracleSizeError
from .merging import Arc
from .model import Edge, NodeId
from .replication import norm_angle

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Chord:
    edge_id: int
    edge: tuple[NodeId, NodeId]
    from_arc: int  # arc indices into the arc list
    to_arc: int
    from_angle: float  # anchor angles used for cost decisions (arc midpoints)
    to_angle: float


@dataclass
class ChordSet:
    chords: list[Chord] = field(default_factory=list)
    cost: float = 0.0  # incrementally maintained total pairwise cost

    def add(self, chord: Chord, delta: float) -> None:
        self.chords.append(chord)
        self.cost += delta


def chords_cross(a1: float, a2: float, b1: float, b2: float) -> bool:
    """Strict interleaving of the two endpoint pairs on the circle; chords
    sharing an anchor never cross."""
    if a1 in (b1, b2) or a2 in (b1, b2):
        return False
    span = (a2 - a1) % TWO_PI
    p1 = (b1 - a1) % TWO_PI
    p2 = (b2 - a1) % TWO_PI
    return (0.0 < p1 < span) != (0.0 < p2 < span)


def pair_cost(a1: float, a2: float, b1: float, b2: float) -> float:
    """0 when the chords do not cross, else 1 - theta/pi where theta is the
    minimum angle between the straight segments at their crossing."""
    if not chords_cross(a1, a2, b1, b2):
        return 0.0
    d1x, d1y = math.cos(a2) - math.cos(a1), math.sin(a2) - math.sin(a1)
    d2x, d2y = math.cos(b2) - math.cos(b1), math.sin(b2) - math.sin(b1)
    n1 = math.hypot(d1x, d1y)
    n2 = math.hypot(d2x, d2y)
    cosv = min(abs(d1x * d2x + d1y * d2y) / (n1 * n2), 1.0)
    theta = math.acos(cosv)
    return 1.0 - theta / math.pi


def total_cost(chords: list[Chord]) -> float:
    """Pairwise cost recomputed from scratch."""
    total = 0.0
    for i in range(len(chords)):
        for j in range(i + 1, len(chords)):
            total += pair_cost(chords[i].from_angle, chords[i].to_angle,
                               chords[j].from_angle, chords[j].to_angle)
    return total


def crossing_count(chords: list[Chord]) -> int:
    n = 0
    for i in range(len(chords)):
        for j in range(i + 1, len(chords)):
            if chords_cross(chords[i].from_angle, chords[i].to_angle,
                            chords[j].from_angle, chords[j].to_angle):
                n += 1
    return n


def _arcs_by_node(arcs: list[Arc]) -> dict[NodeId, list[int]]:
    by_node: dict[NodeId, list[int]] = {}
    for idx, arc in enumerate(arcs):
        by_node.setdefault(arc.source_node, []).append(idx)
    return by_node


def _candidates(arcs: list[Arc], by_node: dict[NodeId, list[int]],
                edge: Edge) -> list[tuple[int, int]]:
    u_arcs = by_node.get(edge.source)
    v_arcs = by_node.get(edge.target)
    if not u_arcs or not v_arcs:
        raise InternalInvariantError(
            f"edge ({edge.source!r}, {edge.target!r}) has an endpoint without arcs"
        )
    pairs = [(a, b) for a in u_arcs for b in v_arcs]
    # deterministic candidate order: by the arcs' start angles
    pairs.sort(key=lambda ab: (arcs[ab[0]].start_angle, arcs[ab[1]].start_angle))
    return pairs


def _make_chord(arcs: list[Arc], edge_id: int, edge: Edge, pair: tuple[int, int]) -> Chord:
    a, b = pair
    return Chord(edge_id, (edge.source, edge.target), a, b,
                 arcs[a].midpoint, arcs[b].midpoint)


def greedy_insert(arcs: list[Arc], edges: list[tuple[int, Edge]]) -> ChordSet:
    """Insert forced single-candidate chords first (edge-id order), then
    repeatedly commit the candidate chord of globally minimum insertion cost.

    ``edges`` holds (edge_id, edge) pairs for the cluster's internal edges.
    """
    by_node = _arcs_by_node(arcs)
    chord_set = ChordSet()
    remaining: list[tuple[int, Edge, list[tuple[int, int]]]] = []
    for edge_id, edge in sorted(edges, key=lambda t: t[0]):
        cands = _candidates(arcs, by_node, edge)
        if len(cands) == 1:
            delta = _insertion_cost(chord_set, arcs, cands[0])
            chord_set.add(_make_chord(arcs, edge_id, edge, cands[0]), delta)
        else:
            remaining.append((edge_id, edge, cands))

    while remaining:
        best = None
        for pos, (edge_id, edge, cands) in enumerate(remaining):
            for pair in cands:
                delta = _insertion_cost(chord_set, arcs, pair)
                key = (delta, edge_id, arcs[pair[0]].start_angle, arcs[pair[1]].start_angle)
                if best is None or key < best[0]:
                    best = (key, pos, edge_id, edge, pair)
        _, pos, edge_id, edge, pair = best
        delta = best[0][0]
        chord_set.add(_make_chord(arcs, edge_id, edge, pair), delta)
        remaining.pop(pos)
    return chord_set


def _insertion_cost(chord_set: ChordSet, arcs: list[Arc], pair: tuple[int, int]) -> float:
    if not chord_set.chords:
        return 0.0
    set1 = np.array([c.from_angle for c in chord_set.chords])
    set2 = np.array([c.to_angle for c in chord_set.chords])
    return _kernels.cost_against_set(arcs[pair[0]].midpoint, arcs[pair[1]].midpoint, set1, set2)


def brute_force_chord_oracle(arcs: list[Arc], edges: list[tuple[int, Edge]],
                             limit: int = 10_000_000) -> ChordSet:
    """Exhaustive minimum-cost representative assignment."""
    by_node = _arcs_by_node(arcs)
    ordered = sorted(edges, key=lambda t: t[0])
    cand_lists = [_candidates(arcs, by_node, edge) for _, edge in ordered]
    total = 1
    for c in cand_lists:
        total *= len(c)
        if total > limit:
            raise OracleSizeError(f"oracle instance too large (> {limit} assignments)")

    best_cost = None
    best_assign = None

    def rec(i: int, chosen: list[tuple[int, int]]):
        nonlocal best_cost, best_assign
        if i == len(ordered):
            chords = [_make_chord(arcs, eid, e, p)
                      for (eid, e), p in zip(ordered, chosen)]
            c = total_cost(chords)
            if best_cost is None or c < best_cost - 1e-15:
                best_cost, best_assign = c, list(chosen)
            return
        for pair in cand_lists[i]:
            chosen.append(pair)
            rec(i + 1, chosen)
            chosen.pop()

    rec(0, [])
    chords = [_make_chord(arcs, eid, e, p) for (eid, e), p in zip(ordered, best_assign or [])]
    return ChordSet(chords, total_cost(chords))


def distribute_endpoints(chord_set: ChordSet, arcs: list[Arc]) -> list[Chord]:
    """Spread the chords incident to each arc evenly inside it, ordered so the
    circular endpoint order (hence the crossing pattern) matches the one used
    on the anchor points."""
    incidences: dict[int, list[tuple[int, bool]]] = {}  # arc -> [(chord idx, is_from)]
    for ci, ch in enumerate(chord_set.chords):
        incidences.setdefault(ch.from_arc, []).append((ci, True))
        incidences.setdefault(ch.to_arc, []).append((ci, False))

    from_angles = [ch.from_angle for ch in chord_set.chords]
    to_angles = [ch.to_angle for ch in chord_set.chords]

    for arc_idx, incident in incidences.items():
        arc = arcs[arc_idx]
        t = len(incident)
        end = arc.start_angle + arc.span

        def far_anchor(item):
            ci, is_from = item
            ch = chord_set.chords[ci]
            return ch.to_angle if is_from else ch.from_angle

        # closest after the arc end (walking CCW) attaches nearest the end
        incident.sort(key=lambda item: ((far_anchor(item) - end) % TWO_PI, item[0]))
        for rank, (ci, is_from) in enumerate(incident):
            slot = arc.start_angle + arc.span * (t - rank) / (t + 1)
            slot = norm_angle(slot)
            if is_from:
                from_angles[ci] = slot
            else:
                to_angles[ci] = slot

    out = []
    for ci, ch in enumerate(chord_set.chords):
        out.append(Chord(ch.edge_id, ch.edge, ch.from_arc, ch.to_arc,
                         from_angles[ci], to_angles[ci]))
    return out
