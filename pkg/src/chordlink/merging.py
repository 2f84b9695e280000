"""Run merging: each maximal run of same-node copies becomes one circular
arc; free spans between runs are divided to balance arc lengths toward
proportionality with internal degree, under copy-coverage, gap and
minimum-length constraints."""

from __future__ import annotations

import colorsys
import logging
import math
from dataclasses import dataclass, field

from .model import NodeId
from .replication import Copy, norm_angle

log = logging.getLogger("chordlink.merging")

TWO_PI = 2.0 * math.pi
DEFAULT_GAP = math.radians(2.0)
DEFAULT_MIN_ARC = math.radians(4.0)
ZERO_DEGREE_WEIGHT = 0.5  # virtual weight so unused arcs stay visible


@dataclass
class Arc:
    source_node: NodeId
    start_angle: float  # normalized to [0, 2pi)
    end_angle: float  # start + span; may exceed 2pi when the arc wraps
    copies: list[Copy] = field(default_factory=list)
    in_deg: float = 0.0
    color: str = ""

    @property
    def span(self) -> float:
        return self.end_angle - self.start_angle

    @property
    def midpoint(self) -> float:
        return norm_angle((self.start_angle + self.end_angle) / 2.0)

    def contains_angle(self, angle: float, tol: float = 1e-9) -> bool:
        rel = (angle - self.start_angle) % TWO_PI
        return rel <= self.span + tol or rel >= TWO_PI - tol


@dataclass
class MergeResult:
    arcs: list[Arc]
    gap: float  # effective gap actually used
    min_arc: float  # effective minimum length actually used
    shrunk: bool  # True when gap or minimum length had to shrink


def _runs(ordered: list[Copy]) -> list[list[Copy]]:
    """Maximal circular runs of same-node copies, starting on a run boundary."""
    n = len(ordered)
    if n == 0:
        return []
    start = 0
    for i in range(n):
        if ordered[i - 1].source_node != ordered[i].source_node:
            start = i
            break
    rotated = ordered[start:] + ordered[:start]
    runs: list[list[Copy]] = []
    for cp in rotated:
        if runs and runs[-1][0].source_node == cp.source_node:
            runs[-1].append(cp)
        else:
            runs.append([cp])
    return runs


def _water_fill(weights: list[float], minima: list[float], total: float) -> list[float]:
    """Lengths proportional to weights, each at least its minimum, summing to
    ``total`` (assumes sum(minima) <= total)."""
    n = len(weights)
    pinned = [False] * n
    lengths = list(minima)
    for _ in range(n + 1):
        free = [i for i in range(n) if not pinned[i]]
        if not free:
            break
        budget = total - sum(lengths[i] for i in range(n) if pinned[i])
        wsum = sum(weights[i] for i in free)
        changed = False
        for i in free:
            share = budget * weights[i] / wsum
            if share < minima[i] - 1e-12:
                pinned[i] = True
                lengths[i] = minima[i]
                changed = True
        if not changed:
            for i in free:
                lengths[i] = budget * weights[i] / wsum
            break
    return lengths


def merge_runs(
    copies: list[Copy],
    intra_degree: dict[NodeId, float] | None = None,
    gap: float = DEFAULT_GAP,
    min_arc: float = DEFAULT_MIN_ARC,
) -> MergeResult:
    """Merge the (already permuted) copy sequence into arcs.

    ``intra_degree`` estimates the number of internal edges each node's arcs
    will carry; a node's estimate is split evenly across its runs.
    """
    ordered = sorted(copies, key=lambda cp: cp.angle)
    if not ordered:
        return MergeResult([], gap, min_arc, False)
    intra_degree = intra_degree or {}
    runs = _runs(ordered)
    k = len(runs)

    run_count: dict[NodeId, int] = {}
    for run in runs:
        run_count[run[0].source_node] = run_count.get(run[0].source_node, 0) + 1

    def share(node: NodeId) -> float:
        d = float(intra_degree.get(node, 0.0)) / run_count[node]
        return d if d > 0 else ZERO_DEGREE_WEIGHT

    if k == 1:
        run = runs[0]
        first, last = run[0].angle, run[-1].angle
        base = (last - first) % TWO_PI
        g_eff = min(gap, TWO_PI - base)
        shrunk = g_eff < gap - 1e-12
        width = TWO_PI - g_eff
        center = first + base / 2.0
        start = norm_angle(center - width / 2.0)
        node = run[0].source_node
        arc = Arc(node, start, start + width, list(run), share(node))
        if shrunk:
            log.warning("gap shrunk to %.4f rad on a crowded circle", g_eff)
        return MergeResult([arc], g_eff, min(min_arc, width), shrunk)

    # unwrapped axis starting at run 0's first copy
    theta0 = runs[0][0].angle
    firsts: list[float] = []
    lasts: list[float] = []
    for run in runs:
        f = (run[0].angle - theta0) % TWO_PI
        l = f + ((run[-1].angle - run[0].angle) % TWO_PI)
        firsts.append(f)
        lasts.append(l)
    gaps = [(firsts[j + 1] - lasts[j]) if j + 1 < k else (TWO_PI - lasts[j] + firsts[0])
            for j in range(k)]
    bases = [lasts[j] - firsts[j] for j in range(k)]

    g_eff = min([gap] + gaps)
    shrunk = g_eff < gap - 1e-12

    total = TWO_PI - k * g_eff
    min_eff = min_arc
    if sum(max(b, min_eff) for b in bases) > total:
        lo, hi = 0.0, min_arc
        for _ in range(60):
            mid = (lo + hi) / 2.0
            if sum(max(b, mid) for b in bases) <= total:
                lo = mid
            else:
                hi = mid
        min_eff = lo
        shrunk = True
    if shrunk:
        log.warning("arc constraints shrunk (gap %.4f rad, min length %.4f rad)", g_eff, min_eff)

    weights = [share(run[0].source_node) for run in runs]
    minima = [max(bases[j], min_eff) for j in range(k)]
    targets = _water_fill(weights, minima, total)

    # meeting points between consecutive runs, constrained so every arc keeps
    # covering its copies and gaps stay centered on the meeting points
    windows = [
        (lasts[j] + g_eff / 2.0,
         (firsts[j + 1] if j + 1 < k else firsts[0] + TWO_PI) - g_eff / 2.0)
        for j in range(k)
    ]
    m = [min(max((w0 + w1) / 2.0, w0), w1) for w0, w1 in windows]
    for _ in range(400):
        delta = 0.0
        for j in range(k):
            left = m[j - 1] - (TWO_PI if j == 0 else 0.0)
            right = m[(j + 1) % k] + (TWO_PI if j == k - 1 else 0.0)
            want = 0.5 * ((left + g_eff + targets[j]) + (right - g_eff - targets[(j + 1) % k]))
            new = min(max(want, windows[j][0]), windows[j][1])
            delta = max(delta, abs(new - m[j]))
            m[j] = new
        if delta < 1e-12:
            break

    arcs: list[Arc] = []
    for j in range(k):
        start_u = m[j - 1] - (TWO_PI if j == 0 else 0.0) + g_eff / 2.0
        end_u = m[j] - g_eff / 2.0
        node = runs[j][0].source_node
        start = norm_angle(theta0 + start_u)
        arcs.append(Arc(node, start, start + (end_u - start_u), list(runs[j]), share(node)))
    arcs.sort(key=lambda a: a.start_angle)

    # copy positions can pinch arcs below the nominal minimum; report honestly
    realized_min = min(arc.span for arc in arcs)
    if realized_min < min_eff - 1e-9:
        min_eff = realized_min
        shrunk = True
        log.warning("copy positions pinch arcs; minimum length down to %.4f rad", min_eff)
    return MergeResult(arcs, g_eff, min_eff, shrunk)


def assign_colors(arcs: list[Arc]) -> dict[NodeId, str]:
    """One color per node (shared by all its arcs), hues stepped by the
    golden angle for pairwise separation."""
    nodes = sorted({a.source_node for a in arcs})
    golden = 137.50776405003785
    colors: dict[NodeId, str] = {}
    for i, node in enumerate(nodes):
        hue = (i * golden) % 360.0
        r, g, b = colorsys.hls_to_rgb(hue / 360.0, 0.55, 0.65)
        colors[node] = f"#{int(r * 255):02x}{int(g * 255):02x}{int(b * 255):02x}"
    for arc in arcs:
        arc.color = colors[arc.source_node]
    return colors
