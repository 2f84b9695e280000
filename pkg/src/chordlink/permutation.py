"""Within-group reordering of boundary copies to minimize the number of
non-consecutive same-node copies.

Copies attached to the same outside point may be permuted freely without
moving any drawn segment. Only each group's first and last element can
affect adjacency with neighboring groups, so the objective reduces to the
number of group boundaries whose facing elements are copies of different
nodes. A backward sweep per candidate first-element of group 0 (see
``_kernels.permutation_best_costs``) yields the exact optimum whenever every
group occupies a contiguous angular block; interleaved groups reuse the same
sweep as a heuristic over the group sequence.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace

from . import _kernels
from .errors import OracleSizeError
from .model import NodeId
from .replication import Copy

_INF = float("inf")


@dataclass
class Group:
    key: object  # shared outside anchor; None-keyed singletons are introvert copies
    members: list[Copy]  # in walk order along the circle
    slots: list[float]  # the member angles, in walk order (fixed geometry)
    contiguous: bool


@dataclass
class PermutationResult:
    copies: list[Copy]  # final circular sequence, sorted by angle
    boundary_mismatch_cost: int
    contiguous: bool  # True when the cost is exact, not heuristic
    orderings: list[list[NodeId]]  # chosen per-group node order (group walk order)


def build_groups(copies: list[Copy], origin_key=None) -> list[Group]:
    """Partition a copy sequence (sorted by angle) into permutation groups.

    Extrovert copies sharing an outside anchor form one group; every introvert
    copy is its own fixed singleton. ``origin_key`` refines the anchor key
    (defaults to the external neighbor id). Group order follows the angular
    position of each group's first copy; when every group is a contiguous
    block the sequence is rotated to start on a block boundary at angle cut 0.
    """
    n = len(copies)
    if n == 0:
        return []
    copies = sorted(copies, key=lambda cp: cp.angle)
    key_of = origin_key or (lambda cp: cp.external_neighbor)

    positions: dict[object, list[int]] = {}
    for idx, cp in enumerate(copies):
        if cp.is_introvert_copy:
            key = ("introvert", cp.copy_id, cp.source_node)
        else:
            key = ("group", key_of(cp))
        positions.setdefault(key, []).append(idx)

    blocks: dict[object, tuple[int, bool]] = {}
    all_contiguous = True
    for key, pos in positions.items():
        t = len(pos)
        breaks = [j for j in range(t) if (pos[(j + 1) % t] - pos[j]) % n != 1]
        if t == n:
            blocks[key] = (0, True)
        elif len(breaks) == 1:
            start = pos[(breaks[0] + 1) % t]
            blocks[key] = (start, True)
        else:
            blocks[key] = (min(pos), False)
            all_contiguous = False

    if all_contiguous:
        # rotate so the group covering slot 0 comes first, cut on its block start
        cut_key = next(key for key, pos in positions.items() if 0 in pos)
        origin = blocks[cut_key][0]

        def sort_key(key):
            return (blocks[key][0] - origin) % n
    else:
        def sort_key(key):
            return blocks[key][0]

    groups: list[Group] = []
    for key in sorted(positions, key=sort_key):
        pos = positions[key]
        start, contiguous = blocks[key]
        if contiguous and len(pos) < n:
            walk = [(start + j) % n for j in range(len(pos))]
        else:
            walk = sorted(pos)
        members = [copies[p] for p in walk]
        groups.append(Group(
            key=None if key[0] == "introvert" else key[1],
            members=members,
            slots=[copies[p].angle for p in walk],
            contiguous=contiguous,
        ))
    return groups


def chi_cost(copies: list[Copy]) -> int:
    """Number of consecutive same-node copy pairs (walking the circle) that
    have at least one other copy strictly between them. Single-copy nodes
    contribute nothing."""
    ordered = sorted(copies, key=lambda cp: cp.angle)
    n = len(ordered)
    by_node: dict[NodeId, list[int]] = {}
    for idx, cp in enumerate(ordered):
        by_node.setdefault(cp.source_node, []).append(idx)
    total = 0
    for pos in by_node.values():
        t = len(pos)
        if t < 2:
            continue
        for j in range(t):
            gap = (pos[(j + 1) % t] - pos[j] - 1) % n
            if gap > 0:
                total += 1
    return total


def group_sequence_cost(orderings: list[list[NodeId]]) -> int:
    """Boundary mismatches of a concrete per-group ordering (circular)."""
    k = len(orderings)
    if k <= 1:
        return 0
    return sum(1 for i in range(k) if orderings[i][-1] != orderings[(i + 1) % k][0])


def _reduce_group(codes: list[int], prev_codes: set[int], next_codes: set[int]) -> tuple[list[int], list[int]]:
    """Split group codes into DP survivors and removed filler members.

    A member whose node occurs in neither adjacent group can never lower the
    cost as a boundary element; it is set aside and later reinserted strictly
    between the chosen first and last element.
    """
    survivors = [c for c in codes if c in prev_codes or c in next_codes]
    removed = sorted(c for c in codes if c not in prev_codes and c not in next_codes)
    want = min(2, len(codes))
    while len(survivors) < want:
        survivors.append(removed.pop(0))
    return sorted(survivors), removed


def _suffix_tables(groups_codes: list[list[int]], f0_code: int) -> list[list[float]]:
    k = len(groups_codes)
    tables: list[list[float]] = [[] for _ in range(k)]
    tables[k - 1] = [0 if c == f0_code else 1 for c in groups_codes[k - 1]]
    for i in range(k - 2, -1, -1):
        nxt = groups_codes[i + 1]
        t_next = tables[i + 1]
        hn = len(nxt)
        mn = min(t_next)
        arg = t_next.index(mn)
        mn2 = min((v for j, v in enumerate(t_next) if j != arg), default=_INF)
        index_of = {c: j for j, c in enumerate(nxt)}
        row: list[float] = []
        for c in groups_codes[i]:
            jstar = index_of.get(c)
            if hn == 1:
                row.append(t_next[0] + (0 if jstar == 0 else 1))
                continue
            b = 1 + mn
            if jstar is None:
                row.append(b)
            else:
                a = mn if arg != jstar else mn2
                row.append(min(a, b))
        tables[i] = row
    return tables


def _group_order_for(group_codes: list[int], removed: list[int], f: int, l: int,
                     code_to_node: list[NodeId]) -> list[NodeId]:
    if len(group_codes) == 1 and not removed:
        return [code_to_node[group_codes[0]]]
    middles = sorted([c for c in group_codes if c not in (f, l)] + removed)
    return [code_to_node[f]] + [code_to_node[c] for c in middles] + [code_to_node[l]]


def permute_groups(groups: list[Group]) -> PermutationResult:
    """Choose a within-group order for every group minimizing boundary
    mismatches; deterministic lexicographic tie-breaking by node id."""
    if not groups:
        return PermutationResult([], 0, True, [])
    contiguous = all(g.contiguous for g in groups)
    k = len(groups)

    node_ids = sorted({cp.source_node for g in groups for cp in g.members})
    code_of = {nid: i for i, nid in enumerate(node_ids)}
    raw_codes = [[code_of[cp.source_node] for cp in g.members] for g in groups]

    if k == 1:
        ordering = [sorted(raw_codes[0])]
        orders = [[node_ids[c] for c in ordering[0]]]
        return PermutationResult(_realize(groups, orders), 0, contiguous, orders)

    code_sets = [set(c) for c in raw_codes]
    reduced: list[list[int]] = []
    removed: list[list[int]] = []
    for i in range(k):
        surv, rem = _reduce_group(raw_codes[i], code_sets[(i - 1) % k], code_sets[(i + 1) % k])
        reduced.append(surv)
        removed.append(rem)

    best = _kernels.permutation_best_costs(reduced, len(node_ids))
    cost = int(best.min())
    f0 = reduced[0][int(best.argmin())]  # survivors sorted, so first argmin is smallest code

    tables = _suffix_tables(reduced, f0)
    orders: list[list[NodeId]] = []
    prev_last: int | None = None
    rem_cost = cost
    for i in range(k):
        codes = reduced[i]
        h = len(codes)
        candidates: list[tuple[int, int]] = []
        if i == 0:
            if h == 1:
                candidates = [(f0, f0)]
            else:
                candidates = [(f0, l) for l in codes if l != f0 and tables[0][codes.index(l)] == rem_cost]
        else:
            for fi, f in enumerate(codes):
                mism = 0 if f == prev_last else 1
                if h == 1:
                    if mism + tables[i][0] == rem_cost:
                        candidates.append((f, f))
                else:
                    for li, l in enumerate(codes):
                        if li == fi:
                            continue
                        if mism + tables[i][li] == rem_cost:
                            candidates.append((f, l))
        assert candidates, "suffix tables must admit at least one optimal choice"
        chosen = min(
            candidates,
            key=lambda fl: _group_order_for(codes, removed[i], fl[0], fl[1], node_ids),
        )
        orders.append(_group_order_for(codes, removed[i], chosen[0], chosen[1], node_ids))
        prev_last = chosen[1]
        rem_cost = tables[i][codes.index(chosen[1])]

    return PermutationResult(_realize(groups, orders), cost, contiguous, orders)


def _realize(groups: list[Group], orders: list[list[NodeId]]) -> list[Copy]:
    """Assign each group's reordered members back onto its fixed slots."""
    out: list[Copy] = []
    for g, order in zip(groups, orders):
        by_node = {cp.source_node: cp for cp in g.members}
        assert len(by_node) == len(g.members), "copies within a group must be of distinct nodes"
        for slot, nid in zip(g.slots, order):
            out.append(replace(by_node[nid], angle=slot))
    out.sort(key=lambda cp: cp.angle)
    return [replace(cp, copy_id=i) for i, cp in enumerate(out)]


def brute_force_permutation_oracle(groups: list[Group], limit: int = 10_000_000) -> PermutationResult:
    """Exhaustive minimum over all within-group permutations.

    Refuses instances whose permutation-product exceeds ``limit``.
    """
    if not groups:
        return PermutationResult([], 0, True, [])
    total = 1
    for g in groups:
        total *= math.factorial(len(g.members))
        if total > limit:
            raise OracleSizeError(f"oracle instance too large (> {limit} permutations)")
    contiguous = all(g.contiguous for g in groups)
    member_ids = [[cp.source_node for cp in g.members] for g in groups]
    best_cost: int | None = None
    best_orders: list[list[NodeId]] | None = None
    for combo in itertools.product(*(itertools.permutations(ids) for ids in member_ids)):
        orders = [list(p) for p in combo]
        c = group_sequence_cost(orders)
        if best_cost is None or c < best_cost or (c == best_cost and orders < best_orders):
            best_cost, best_orders = c, orders
    return PermutationResult(_realize(groups, best_orders), best_cost, contiguous, best_orders)
