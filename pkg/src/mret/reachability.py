"""Temporal-reachability evaluation engine.

A temporal path is an edge sequence that is consecutive in endpoints
and strictly increasing in appearing time.  Equal-time edges therefore
never chain.  The engine runs one forward pass over the edges in time
order, keeping for every node the packed bit set of sources that reach
it; processing edge (a, b) merges the set of a into the set of b.  With
all-distinct times this single pass is exact, because every prefix of
the pass uses strictly smaller times than the edge being processed.
With ties, all merges of one time group read from a snapshot taken at
the end of the previous group.

Reach sets are Python integers used as bit vectors, so one merge is a
single word-parallel OR: a full evaluation costs O(m * n / wordsize).
Reflexive pairs count: an empty-edge graph has total = n.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import groupby

from .graphs import Digraph, Schedule, Temporalisation


@dataclass(frozen=True)
class ReachabilityResult:
    """Full reachability picture of one evaluated temporal graph.

    `reach_from[v]` has bit u set iff v is temporally reachable from u
    (bit v is always set).  `per_source_counts[u]` is the number of
    nodes reachable from u.  `total` counts all ordered reachable
    pairs, reflexive ones included, so n <= total <= n**2.
    """

    node_count: int
    reach_from: tuple[int, ...]
    per_source_counts: tuple[int, ...]
    total: int

    def reaches(self, u: int, v: int) -> bool:
        return bool(self.reach_from[v] >> u & 1)

    def sources_reaching(self, v: int) -> set[int]:
        mask = self.reach_from[v]
        return {u for u in range(self.node_count) if mask >> u & 1}

    def targets_reached(self, u: int) -> set[int]:
        return {v for v in range(self.node_count) if self.reach_from[v] >> u & 1}


def _result(node_count: int, reach: list[int], rev: list[int]) -> ReachabilityResult:
    total = sum(r.bit_count() for r in reach)
    counts = tuple(r.bit_count() for r in rev)
    assert total == sum(counts)
    return ReachabilityResult(node_count, tuple(reach), counts, total)


def evaluate_schedule(g: Digraph, s: Schedule) -> ReachabilityResult:
    """Evaluate a schedule: edge `s.order[i]` appears at time i+1."""
    order = s.order
    if len(order) != g.edge_count:
        raise ValueError(
            f"schedule is not a permutation of the graph's edge indices "
            f"(length {len(order)}, expected {g.edge_count})"
        )
    edges = g.edges
    # forward: reach[v] = sources reaching v so far
    reach = [1 << v for v in range(g.node_count)]
    for ei in order:
        a, b = edges[ei]
        reach[b] |= reach[a]
    # backward over reversed edges: rev[u] = targets reachable from u
    rev = [1 << v for v in range(g.node_count)]
    for ei in reversed(order):
        a, b = edges[ei]
        rev[a] |= rev[b]
    return _result(g.node_count, reach, rev)


def _grouped_pass(node_count: int, edges, groups, forward: bool) -> list[int]:
    # merges within one group read the snapshot from the previous group:
    # equal-time edges never chain
    reach = [1 << v for v in range(node_count)]
    for group in groups:
        updates: dict[int, int] = {}
        for ei in group:
            a, b = edges[ei]
            if not forward:
                a, b = b, a
            updates[b] = updates.get(b, 0) | reach[a]
        for b, mask in updates.items():
            reach[b] |= mask
    return reach


def evaluate_temporalisation(g: Digraph, t: Temporalisation) -> ReachabilityResult:
    """Evaluate a temporalisation, processing distinct times in order."""
    if len(t.times) != g.edge_count:
        raise ValueError(
            f"temporalisation length {len(t.times)} does not match edge count {g.edge_count}"
        )
    times = t.times
    by_time = sorted(range(g.edge_count), key=lambda i: times[i])
    groups = [list(grp) for _, grp in groupby(by_time, key=lambda i: times[i])]
    reach = _grouped_pass(g.node_count, g.edges, groups, forward=True)
    rev = _grouped_pass(g.node_count, g.edges, reversed(groups), forward=False)
    return _result(g.node_count, reach, rev)


def schedule_from_temporalisation(t: Temporalisation) -> Schedule:
    """Stable sort of edge indices by time label (ties by edge index).

    The returned schedule keeps every temporal path of `t` valid and may
    enable new ones, so its total reachability is >= that of `t`; with
    all-distinct labels the two are equal.
    """
    times = t.times
    return Schedule(tuple(sorted(range(len(times)), key=lambda i: times[i])))
