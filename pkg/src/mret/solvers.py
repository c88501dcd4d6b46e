"""Schedule search: exhaustive, local, and arborescence-guided.

All three solvers maximize total reachability over schedules and return
a `SolveResult`.  `solve_exact` enumerates every ordering and is the
small-scale ground truth; `solve_local` is seeded hill climbing over
adjacent transpositions; `solve_arborescence` turns an edge-disjoint
in/out arborescence pair into a schedule whose total is at least the
product of the two spanned node counts.

Self-loops are rejected: a loop never extends a path to a new node, so
allowing it would only pad schedules.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import permutations

from .astra import ArborescencePair, greedy_pair
from .errors import ScaleLimitError
from .graphs import Digraph, Schedule, is_strongly_connected
from .reachability import evaluate_schedule


@dataclass(frozen=True)
class SolveResult:
    """Best schedule found by one solver run.

    `explored` counts engine evaluations.  `certificate` is only set by
    the arborescence method: the in/out spanned node counts, whose
    product is a proven lower bound on `best_total`.
    """

    method: str
    best_schedule: Schedule
    best_total: int
    explored: int
    certificate: tuple[int, int] | None = None

    def to_json(self) -> dict:
        return {
            "method": self.method,
            "total": self.best_total,
            "schedule": list(self.best_schedule.order),
            "explored": self.explored,
            "certificate": list(self.certificate) if self.certificate else None,
        }


def _reject_self_loops(g: Digraph) -> None:
    loops = g.self_loops()
    if loops:
        raise ValueError(f"self-loops are not solvable (edge index {loops[0]})")


def _schedule_total(g: Digraph, order) -> int:
    """Total reachability of one ordering, skipping the reverse pass."""
    edges = g.edges
    reach = [1 << v for v in range(g.node_count)]
    for ei in order:
        a, b = edges[ei]
        reach[b] |= reach[a]
    return sum(r.bit_count() for r in reach)


def solve_exact(g: Digraph, limit: int = 10) -> SolveResult:
    """Try all m! schedules; ties go to the lexicographically smallest."""
    _reject_self_loops(g)
    m = g.edge_count
    if m > limit:
        raise ScaleLimitError(
            f"exact search infeasible at this scale: "
            f"{m} edges means {m}! schedules (limit {limit})"
        )
    best_total = -1
    best_order: tuple[int, ...] | None = None
    explored = 0
    for order in permutations(range(m)):
        total = _schedule_total(g, order)
        explored += 1
        # permutations() is lexicographic, so strict improvement keeps
        # the smallest maximizer
        if total > best_total:
            best_total = total
            best_order = order
    assert best_order is not None
    return SolveResult("exact", Schedule(best_order), best_total, explored)


def solve_local(
    g: Digraph, seed: int = 0, restarts: int = 8, steps: int | None = None
) -> SolveResult:
    """Hill climbing with adjacent swaps from seeded random starts.

    Each restart takes the best improving swap until none exists (or
    `steps` moves).  Deterministic for a given seed; the best total over
    restarts wins, ties going to the lexicographically smaller order.
    """
    _reject_self_loops(g)
    m = g.edge_count
    rng = random.Random(seed)
    best_total = -1
    best_order: tuple[int, ...] | None = None
    explored = 0
    for _ in range(max(1, restarts)):
        order = list(range(m))
        rng.shuffle(order)
        current = _schedule_total(g, order)
        explored += 1
        moves = 0
        while steps is None or moves < steps:
            swap_total = current
            swap_at = None
            for j in range(m - 1):
                order[j], order[j + 1] = order[j + 1], order[j]
                total = _schedule_total(g, order)
                explored += 1
                order[j], order[j + 1] = order[j + 1], order[j]
                if total > swap_total:
                    swap_total = total
                    swap_at = j
            if swap_at is None:
                break
            order[swap_at], order[swap_at + 1] = order[swap_at + 1], order[swap_at]
            current = swap_total
            moves += 1
        key = tuple(order)
        if current > best_total or (current == best_total and key < best_order):
            best_total = current
            best_order = key
    assert best_order is not None
    return SolveResult("local-search", Schedule(best_order), best_total, explored)


def arborescence_order(g: Digraph, pair: ArborescencePair) -> tuple[int, ...]:
    """Schedule realizing the pair's reachability guarantee.

    In-tree edges fire first, deepest child endpoint first, so every
    leaf-to-root path gets increasing times; then out-tree edges,
    shallowest first; then everything else in index order.
    """
    in_part = sorted(pair.in_edges, key=lambda ei: (-pair.in_depths[g.edges[ei][0]], ei))
    out_part = sorted(pair.out_edges, key=lambda ei: (pair.out_depths[g.edges[ei][1]], ei))
    used = pair.in_edges | pair.out_edges
    rest = [ei for ei in range(g.edge_count) if ei not in used]
    return tuple(in_part + out_part + rest)


def solve_arborescence(
    g: Digraph, root: int | None = None, seed: int = 0
) -> SolveResult:
    """Schedule via an edge-disjoint in/out arborescence pair.

    Tries the given root, or every root when none is given, and keeps
    the best evaluated total (ties to the smallest root).  The
    certificate (|in nodes|, |out nodes|) multiplies to a lower bound:
    the in-tree brings its nodes to the root before any out-edge fires.
    """
    _reject_self_loops(g)
    if not is_strongly_connected(g):
        raise ValueError("digraph is not strongly connected")
    roots = range(g.node_count) if root is None else [root]
    best: tuple[int, tuple[int, ...], ArborescencePair] | None = None
    explored = 0
    for r in roots:
        pair = greedy_pair(g, r, seed=seed)
        order = arborescence_order(g, pair)
        total = _schedule_total(g, order)
        explored += 1
        if best is None or total > best[0]:
            best = (total, order, pair)
    assert best is not None
    total, order, pair = best
    certificate = (len(pair.in_nodes), len(pair.out_nodes))
    assert total >= certificate[0] * certificate[1]
    assert total == evaluate_schedule(g, Schedule(order)).total
    return SolveResult(
        "arborescence", Schedule(order), total, explored, certificate
    )
