"""Numeric hot loops: force-directed iterations, the within-group permutation
DP sweep, and chord crossing-cost sums.

Each kernel has a numba ``@njit`` implementation and a pure-numpy fallback.
The active path is chosen at import time: set ``CHORDLINK_NUMBA=0`` to force
the numpy path (the default uses numba when it is importable).
``benchmarks/bench_kernels.py`` compares the two.
"""

from __future__ import annotations

import math
import os

import numpy as np

_flag = os.environ.get("CHORDLINK_NUMBA", "1").strip().lower()
_WANT_NUMBA = _flag not in ("0", "false", "no", "off")

if _WANT_NUMBA:
    try:
        from numba import njit

        HAS_NUMBA = True
    except ImportError:
        HAS_NUMBA = False
else:
    HAS_NUMBA = False

if not HAS_NUMBA:
    def njit(*args, **kwargs):  # no-op decorator so both paths share source
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


def backend() -> str:
    return "numba" if HAS_NUMBA else "numpy"


# ---------------------------------------------------------------------------
# Force-directed layout
# ---------------------------------------------------------------------------

@njit(cache=True)
def _force_iterations_numba(pos, edges, rest_len, repulsion, stiffness,
                            iterations, cooling, t0):
    n = pos.shape[0]
    e = edges.shape[0]
    disp = np.zeros((n, 2))
    t = t0
    for _ in range(iterations):
        disp[:] = 0.0
        for i in range(n):
            for j in range(i + 1, n):
                dx = pos[i, 0] - pos[j, 0]
                dy = pos[i, 1] - pos[j, 1]
                d = math.sqrt(dx * dx + dy * dy)
                if d < 1e-9:
                    d = 1e-9
                f = repulsion * rest_len * rest_len / d
                ux = dx / d
                uy = dy / d
                disp[i, 0] += f * ux
                disp[i, 1] += f * uy
                disp[j, 0] -= f * ux
                disp[j, 1] -= f * uy
        for k in range(e):
            a = edges[k, 0]
            b = edges[k, 1]
            dx = pos[a, 0] - pos[b, 0]
            dy = pos[a, 1] - pos[b, 1]
            d = math.sqrt(dx * dx + dy * dy)
            if d < 1e-9:
                d = 1e-9
            f = stiffness * d * d / rest_len
            ux = dx / d
            uy = dy / d
            disp[a, 0] -= f * ux
            disp[a, 1] -= f * uy
            disp[b, 0] += f * ux
            disp[b, 1] += f * uy
        for i in range(n):
            dl = math.sqrt(disp[i, 0] ** 2 + disp[i, 1] ** 2)
            if dl > 1e-12:
                step = dl if dl < t else t
                pos[i, 0] += disp[i, 0] / dl * step
                pos[i, 1] += disp[i, 1] / dl * step
        t *= cooling
    return pos


def _force_iterations_numpy(pos, edges, rest_len, repulsion, stiffness,
                            iterations, cooling, t0):
    n = pos.shape[0]
    t = t0
    for _ in range(iterations):
        diff = pos[:, None, :] - pos[None, :, :]
        dist = np.sqrt((diff ** 2).sum(axis=2))
        np.fill_diagonal(dist, np.inf)
        dist = np.maximum(dist, 1e-9)
        coef = repulsion * rest_len * rest_len / (dist * dist)
        disp = (coef[:, :, None] * diff).sum(axis=1)
        if len(edges):
            ediff = pos[edges[:, 0]] - pos[edges[:, 1]]
            edist = np.maximum(np.sqrt((ediff ** 2).sum(axis=1)), 1e-9)
            pull = (stiffness * edist / rest_len)[:, None] * ediff
            np.subtract.at(disp, edges[:, 0], pull)
            np.add.at(disp, edges[:, 1], pull)
        norm = np.sqrt((disp ** 2).sum(axis=1))
        scale = np.where(norm > 1e-12, np.minimum(norm, t) / np.maximum(norm, 1e-12), 0.0)
        pos = pos + disp * scale[:, None]
        t *= cooling
    return pos


def force_iterations(pos, edges, rest_len, repulsion, stiffness,
                     iterations, cooling, t0):
    """Run the spring-electrical iteration loop, returning final positions."""
    pos = np.ascontiguousarray(pos, dtype=np.float64).copy()
    edges = np.ascontiguousarray(edges, dtype=np.int64).reshape(-1, 2)
    if HAS_NUMBA:
        return _force_iterations_numba(pos, edges, float(rest_len), float(repulsion),
                                       float(stiffness), int(iterations),
                                       float(cooling), float(t0))
    return _force_iterations_numpy(pos, edges, float(rest_len), float(repulsion),
                                   float(stiffness), int(iterations),
                                   float(cooling), float(t0))


# ---------------------------------------------------------------------------
# Permutation DP sweep
#
# Groups are the unit of permutation; only each group's first/last element
# affects the mismatch count at group boundaries, and the suffix cost depends
# only on the last element chosen for a group. For a fixed first element of
# group 0 a backward sweep with per-group (min, argmin, second-min) reduction
# gives the optimum; the sweep is repeated for every possible first element.
# ---------------------------------------------------------------------------

_BIG = 1 << 30


@njit(cache=True)
def _permutation_best_costs_numba(codes, sizes, inv):
    k = codes.shape[0]
    h0 = sizes[0]
    best = np.empty(h0, dtype=np.int64)
    hmax = codes.shape[1]
    t_cur = np.empty(hmax, dtype=np.int64)
    t_next = np.empty(hmax, dtype=np.int64)
    for f0 in range(h0):
        f0node = codes[0, f0]
        hl = sizes[k - 1]
        for l in range(hl):
            t_cur[l] = 0 if codes[k - 1, l] == f0node else 1
        for i in range(k - 2, -1, -1):
            hn = sizes[i + 1]
            mn = _BIG
            arg = -1
            mn2 = _BIG
            for l in range(hn):
                v = t_cur[l]
                if v < mn:
                    mn2 = mn
                    mn = v
                    arg = l
                elif v < mn2:
                    mn2 = v
            hi = sizes[i]
            for l in range(hi):
                x = codes[i, l]
                jstar = inv[i + 1, x]
                if hn == 1:
                    t_next[l] = t_cur[0] + (0 if jstar == 0 else 1)
                else:
                    b = 1 + mn
                    if jstar >= 0:
                        a = mn if arg != jstar else mn2
                        t_next[l] = a if a < b else b
                    else:
                        t_next[l] = b
            for l in range(hi):
                t_cur[l] = t_next[l]
        h0s = sizes[0]
        if h0s == 1:
            best[f0] = t_cur[f0]
        else:
            r = _BIG
            for l in range(h0s):
                if l != f0 and t_cur[l] < r:
                    r = t_cur[l]
            best[f0] = r
    return best


def _permutation_best_costs_numpy(codes, sizes, inv):
    k = codes.shape[0]
    h0 = int(sizes[0])
    f0nodes = codes[0, :h0]
    hl = int(sizes[k - 1])
    # rows: one suffix table per candidate first element of group 0
    t = (codes[k - 1, :hl][None, :] != f0nodes[:, None]).astype(np.int64)
    for i in range(k - 2, -1, -1):
        hn = int(sizes[i + 1])
        hi = int(sizes[i])
        if hn == 1:
            base = t[:, 0]
            jstars = inv[i + 1, codes[i, :hi]]
            t = base[:, None] + (jstars[None, :] != 0).astype(np.int64)
            continue
        order = np.argsort(t, axis=1, kind="stable")
        mn = np.take_along_axis(t, order[:, :1], axis=1)[:, 0]
        arg = order[:, 0]
        mn2 = np.take_along_axis(t, order[:, 1:2], axis=1)[:, 0]
        jstars = inv[i + 1, codes[i, :hi]]
        b = 1 + mn
        a = np.where(arg[:, None] != jstars[None, :], mn[:, None], mn2[:, None])
        a = np.where(jstars[None, :] >= 0, a, _BIG)
        t = np.minimum(a, b[:, None])
    if h0 == 1:
        return t[:, 0].copy()
    masked = t.copy()
    masked[np.arange(h0), np.arange(h0)] = _BIG
    return masked.min(axis=1)


def permutation_best_costs(groups: list[list[int]], alphabet_size: int) -> np.ndarray:
    """Minimum boundary-mismatch cost for each choice of group 0's first element.

    ``groups`` holds integer node codes; within a group codes are distinct.
    Requires at least two groups (a single group has no boundaries).
    """
    k = len(groups)
    hmax = max(len(g) for g in groups)
    codes = np.full((k, hmax), -1, dtype=np.int64)
    sizes = np.empty(k, dtype=np.int64)
    inv = np.full((k, alphabet_size), -1, dtype=np.int64)
    for i, g in enumerate(groups):
        sizes[i] = len(g)
        for j, c in enumerate(g):
            codes[i, j] = c
            inv[i, c] = j
    if HAS_NUMBA:
        return _permutation_best_costs_numba(codes, sizes, inv)
    return _permutation_best_costs_numpy(codes, sizes, inv)


# ---------------------------------------------------------------------------
# Chord crossing costs
# ---------------------------------------------------------------------------

TWO_PI = 2.0 * math.pi


@njit(cache=True)
def _pair_cost_scalar(a1, a2, b1, b2):
    # shared anchor (same arc midpoint): adjacent chords never cross
    if a1 == b1 or a1 == b2 or a2 == b1 or a2 == b2:
        return 0.0
    span = (a2 - a1) % TWO_PI
    p1 = (b1 - a1) % TWO_PI
    p2 = (b2 - a1) % TWO_PI
    in1 = 0.0 < p1 < span
    in2 = 0.0 < p2 < span
    if in1 == in2:
        return 0.0
    d1x = math.cos(a2) - math.cos(a1)
    d1y = math.sin(a2) - math.sin(a1)
    d2x = math.cos(b2) - math.cos(b1)
    d2y = math.sin(b2) - math.sin(b1)
    n1 = math.sqrt(d1x * d1x + d1y * d1y)
    n2 = math.sqrt(d2x * d2x + d2y * d2y)
    c = abs(d1x * d2x + d1y * d2y) / (n1 * n2)
    if c > 1.0:
        c = 1.0
    theta = math.acos(c)
    return 1.0 - theta / math.pi


@njit(cache=True)
def _cost_against_set_numba(c1, c2, set1, set2):
    total = 0.0
    for i in range(set1.shape[0]):
        total += _pair_cost_scalar(c1, c2, set1[i], set2[i])
    return total


def _cost_against_set_numpy(c1, c2, set1, set2):
    if set1.size == 0:
        return 0.0
    shared = (set1 == c1) | (set1 == c2) | (set2 == c1) | (set2 == c2)
    span = (c2 - c1) % TWO_PI
    p1 = (set1 - c1) % TWO_PI
    p2 = (set2 - c1) % TWO_PI
    in1 = (p1 > 0.0) & (p1 < span)
    in2 = (p2 > 0.0) & (p2 < span)
    crossing = (in1 != in2) & ~shared
    if not crossing.any():
        return 0.0
    d1 = np.array([math.cos(c2) - math.cos(c1), math.sin(c2) - math.sin(c1)])
    d2x = np.cos(set2[crossing]) - np.cos(set1[crossing])
    d2y = np.sin(set2[crossing]) - np.sin(set1[crossing])
    n1 = math.hypot(d1[0], d1[1])
    n2 = np.sqrt(d2x ** 2 + d2y ** 2)
    cosv = np.clip(np.abs(d1[0] * d2x + d1[1] * d2y) / (n1 * n2), 0.0, 1.0)
    theta = np.arccos(cosv)
    return float((1.0 - theta / math.pi).sum())


def cost_against_set(c1: float, c2: float, set1: np.ndarray, set2: np.ndarray) -> float:
    """Sum of pairwise crossing costs of chord (c1, c2) against a chord set."""
    set1 = np.asarray(set1, dtype=np.float64)
    set2 = np.asarray(set2, dtype=np.float64)
    if HAS_NUMBA:
        return float(_cost_against_set_numba(float(c1), float(c2), set1, set2))
    return _cost_against_set_numpy(float(c1), float(c2), set1, set2)
