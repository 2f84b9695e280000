"""Benchmark the numba kernels against their pure-numpy fallbacks.

Run from the repo root:  python benchmarks/bench_kernels.py
(Independent of CHORDLINK_NUMBA: both paths are invoked directly.)
"""

from __future__ import annotations

import math
import time

import numpy as np

from chordlink import _kernels
from chordlink._kernels import (
    HAS_NUMBA,
    _cost_against_set_numpy,
    _force_iterations_numpy,
    _permutation_best_costs_numpy,
)


def timeit(fn, repeat=5):
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def pack_groups(groups, alphabet):
    k = len(groups)
    hmax = max(len(g) for g in groups)
    codes = np.full((k, hmax), -1, dtype=np.int64)
    sizes = np.empty(k, dtype=np.int64)
    inv = np.full((k, alphabet), -1, dtype=np.int64)
    for i, g in enumerate(groups):
        sizes[i] = len(g)
        for j, c in enumerate(g):
            codes[i, j] = c
            inv[i, c] = j
    return codes, sizes, inv


def bench_force():
    rng = np.random.default_rng(0)
    pos = rng.uniform(-100, 100, (300, 2))
    edges = rng.integers(0, 300, (400, 2)).astype(np.int64)
    edges = edges[edges[:, 0] != edges[:, 1]]
    args = dict(rest_len=80.0, repulsion=1.0, stiffness=1.0,
                iterations=100, cooling=0.95, t0=80.0)

    rows = []
    t_np = timeit(lambda: _force_iterations_numpy(pos.copy(), edges, **args))
    rows.append(("numpy", t_np))
    if HAS_NUMBA:
        from chordlink._kernels import _force_iterations_numba

        _force_iterations_numba(pos.copy(), edges, 80.0, 1.0, 1.0, 2, 0.95, 80.0)  # warm
        t_nb = timeit(lambda: _force_iterations_numba(pos.copy(), edges, 80.0, 1.0, 1.0,
                                                      100, 0.95, 80.0))
        rows.append(("numba", t_nb))
    return "force_iterations (n=300, e≈400, 100 iters)", rows


def bench_dp():
    rng = np.random.default_rng(1)
    groups = [list(rng.choice(40, size=10, replace=False)) for _ in range(50)]
    packed = pack_groups(groups, 40)

    rows = []
    t_np = timeit(lambda: _permutation_best_costs_numpy(*packed))
    rows.append(("numpy", t_np))
    if HAS_NUMBA:
        from chordlink._kernels import _permutation_best_costs_numba

        _permutation_best_costs_numba(*pack_groups([[0, 1], [1, 0]], 2))  # warm
        t_nb = timeit(lambda: _permutation_best_costs_numba(*packed))
        rows.append(("numba", t_nb))
    return "permutation sweep (m=500 copies, 50 groups)", rows


def bench_alpha():
    rng = np.random.default_rng(2)
    set1 = rng.uniform(0, 2 * math.pi, 500)
    set2 = rng.uniform(0, 2 * math.pi, 500)

    def run_numpy():
        for c1, c2 in zip(set1[:50], set2[:50]):
            _cost_against_set_numpy(c1, c2, set1, set2)

    rows = [("numpy", timeit(run_numpy))]
    if HAS_NUMBA:
        from chordlink._kernels import _cost_against_set_numba

        _cost_against_set_numba(0.0, 1.0, set1[:2], set2[:2])  # warm

        def run_numba():
            for c1, c2 in zip(set1[:50], set2[:50]):
                _cost_against_set_numba(c1, c2, set1, set2)

        rows.append(("numba", timeit(run_numba)))
    return "chord cost sums (50 candidates x 500 chords)", rows


def main():
    print(f"active backend: {_kernels.backend()}")
    if not HAS_NUMBA:
        print("numba unavailable or disabled; benchmarking the numpy path only\n")
    for title, rows in (bench_force(), bench_dp(), bench_alpha()):
        print(title)
        base = dict(rows).get("numpy")
        for name, t in rows:
            speedup = f"  ({base / t:5.1f}x vs numpy)" if name == "numba" and base else ""
            print(f"  {name:<6} {t * 1000:9.2f} ms{speedup}")
        print()


if __name__ == "__main__":
    main()
