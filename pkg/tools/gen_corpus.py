"""Generate the synthetic transaction-network corpus used by the tests:
174 nodes and 200 weighted edges arranged as loosely connected communities.

Run from the repo root:  python tools/gen_corpus.py
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

SEED = 20140
N_NODES = 174
N_EDGES = 200
AREAS = ["NORD", "SUD", "EST", "OVEST", "CENTRO"]


def main() -> None:
    rng = np.random.default_rng(SEED)

    sizes = []
    remaining = N_NODES
    while remaining > 0:
        s = int(rng.integers(7, 15))
        s = min(s, remaining)
        if remaining - s in (1, 2):  # avoid a trailing degenerate community
            s = remaining
        sizes.append(s)
        remaining -= s

    communities = []
    next_id = 1
    for s in sizes:
        communities.append(list(range(next_id, next_id + s)))
        next_id += s

    edges: set[tuple[int, int]] = set()

    def add(u: int, v: int) -> bool:
        if u == v:
            return False
        key = (u, v) if u < v else (v, u)
        if key in edges:
            return False
        edges.add(key)
        return True

    # spanning tree per community, then densify
    for comm in communities:
        shuffled = list(comm)
        rng.shuffle(shuffled)
        for i in range(1, len(shuffled)):
            j = int(rng.integers(0, i))
            add(shuffled[i], shuffled[j])
    intra_budget = 170 - len(edges)
    guard = 0
    while intra_budget > 0 and guard < 10000:
        guard += 1
        comm = communities[int(rng.integers(0, len(communities)))]
        u, v = rng.choice(comm, size=2, replace=False)
        if add(int(u), int(v)):
            intra_budget -= 1

    # sparse bridges between communities
    guard = 0
    while len(edges) < N_EDGES and guard < 10000:
        guard += 1
        ci, cj = rng.choice(len(communities), size=2, replace=False)
        u = int(rng.choice(communities[ci]))
        v = int(rng.choice(communities[cj]))
        add(u, v)

    assert len(edges) == N_EDGES, len(edges)

    weights = np.round(np.exp(rng.normal(0.0, 0.9, size=N_EDGES)) * 10, 2)
    weights = np.maximum(weights, 0.1)

    lines = ["graph ["]
    for comm_idx, comm in enumerate(communities):
        for nid in comm:
            area = AREAS[comm_idx % len(AREAS)]
            lines.append(f'  node [ id {nid} label "T{nid:03d} {area}" ]')
    for (u, v), w in zip(sorted(edges), weights):
        lines.append(f"  edge [ source {u} target {v} weight {w} ]")
    lines.append("]")

    out = Path(__file__).resolve().parent.parent / "tests" / "data" / "fiscal_scale.gml"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {out} ({N_NODES} nodes, {len(edges)} edges, "
          f"{len(communities)} communities)")


if __name__ == "__main__":
    main()
