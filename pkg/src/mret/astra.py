"""Edge-disjoint common-root arborescence pairs.

The objective throughout is max-min: find an out-arborescence and an
in-arborescence that are rooted at the same node, share no edge, and
maximize the smaller of the two spanned node counts (both counts
include the root).  `greedy_pair` is a fast heuristic built on residual
breadth-first searches; `exact_pair` enumerates out-trees with pruning
and is the small-scale ground truth; `best_root` sweeps all roots.

Self-loops can never sit on an arborescence; the searches here simply
never pick them.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass

from .errors import ScaleLimitError
from .graphs import Digraph, is_strongly_connected

GREEDY_RANDOM_ATTEMPTS = 6


@dataclass(frozen=True)
class ArborescencePair:
    """A common-root, edge-disjoint out/in arborescence pair.

    `out_edges` forms a tree oriented away from `root` covering exactly
    `out_nodes`; `in_edges` a tree oriented toward `root` covering
    exactly `in_nodes`.  The depth maps give every spanned node's tree
    distance from the root; the arborescence solver orders its schedule
    by them.
    """

    root: int
    out_edges: frozenset[int]
    in_edges: frozenset[int]
    out_nodes: frozenset[int]
    in_nodes: frozenset[int]
    out_depths: dict[int, int]
    in_depths: dict[int, int]

    @property
    def min_size(self) -> int:
        return min(len(self.out_nodes), len(self.in_nodes))


@dataclass(frozen=True)
class AstraReport:
    """Per-root best min-sizes and the overall best root for one graph."""

    method: str
    per_root: tuple[int, ...]
    best_root: int
    best_min: int
    ratio: float

    def to_json(self) -> dict:
        return {
            "per_root": list(self.per_root),
            "best_root": self.best_root,
            "best_min": self.best_min,
            "ratio": self.ratio,
            "method": self.method,
        }


def _require_pair_input(g: Digraph, root: int) -> None:
    if not 0 <= root < g.node_count:
        raise ValueError(f"root {root} out of range for {g.node_count} nodes")
    if not is_strongly_connected(g):
        raise ValueError("digraph is not strongly connected")


def _grow_tree(adj, root: int, banned) -> tuple[frozenset[int], frozenset[int], dict[int, int]]:
    """BFS tree over `adj` rows of (neighbor, edge_index), skipping banned edges.

    Returns (tree edge indices, spanned nodes, node depths).  With the
    forward adjacency this grows an out-arborescence, with the reverse
    adjacency an in-arborescence.
    """
    depths = {root: 0}
    tree_edges = []
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v, ei in adj[u]:
            if v not in depths and ei not in banned:
                depths[v] = depths[u] + 1
                tree_edges.append(ei)
                queue.append(v)
    return frozenset(tree_edges), frozenset(depths), depths


def greedy_pair(g: Digraph, root: int, seed: int = 0) -> ArborescencePair:
    """Heuristic pair: BFS one tree, rebuild the other in the residual graph.

    Tries both build orders and several seeded neighbor shufflings and
    keeps the attempt with the largest min-size (ties by larger total
    span, then first found).  Deterministic for a given seed.
    """
    _require_pair_input(g, root)
    rng = random.Random(seed)
    fwd = [list(row) for row in g.out_adj]
    rev = [list(row) for row in g.in_adj]

    def attempt(in_first: bool) -> ArborescencePair:
        if in_first:
            in_e, in_n, in_d = _grow_tree(rev, root, frozenset())
            out_e, out_n, out_d = _grow_tree(fwd, root, in_e)
        else:
            out_e, out_n, out_d = _grow_tree(fwd, root, frozenset())
            in_e, in_n, in_d = _grow_tree(rev, root, out_e)
        return ArborescencePair(root, out_e, in_e, out_n, in_n, out_d, in_d)

    best: ArborescencePair | None = None
    for _ in range(1 + GREEDY_RANDOM_ATTEMPTS):
        for in_first in (True, False):
            cand = attempt(in_first)
            if best is None or (
                cand.min_size,
                len(cand.out_nodes) + len(cand.in_nodes),
            ) > (best.min_size, len(best.out_nodes) + len(best.in_nodes)):
                best = cand
        for row in fwd:
            rng.shuffle(row)
        for row in rev:
            rng.shuffle(row)
    assert best is not None
    return best


def exact_pair(g: Digraph, root: int, limit: int = 20) -> ArborescencePair:
    """Optimal pair by enumerating all out-trees rooted at `root`.

    For a fixed out-tree the best in-arborescence in the residual graph
    spans exactly the nodes that still reach the root, so each out-tree
    is scored with one reverse BFS.  Out-trees are enumerated once each
    (frontier edges taken in index order, earlier siblings banned), with
    branches pruned when neither side can beat the incumbent min-size.
    Ties break toward larger total span, then lexicographically smaller
    edge sets.
    """
    _require_pair_input(g, root)
    if g.edge_count > limit:
        raise ScaleLimitError(
            f"exact pair search infeasible at this scale: "
            f"{g.edge_count} edges exceeds limit {limit}"
        )
    edges = g.edges
    fwd = g.out_adj
    rev = g.in_adj

    best_sizes: tuple[int, int] | None = None
    best_edge_sets: tuple[tuple[int, ...], tuple[int, ...]] | None = None
    best_pair: ArborescencePair | None = None

    def consider(tree_edges: list[int], tree_nodes: set[int], depths: dict[int, int]):
        nonlocal best_sizes, best_edge_sets, best_pair
        in_e, in_n, in_d = _grow_tree(rev, root, frozenset(tree_edges))
        sizes = (min(len(tree_nodes), len(in_n)), len(tree_nodes) + len(in_n))
        edge_sets = (tuple(sorted(tree_edges)), tuple(sorted(in_e)))
        if (
            best_sizes is None
            or sizes > best_sizes
            or (sizes == best_sizes and edge_sets < best_edge_sets)
        ):
            best_sizes = sizes
            best_edge_sets = edge_sets
            best_pair = ArborescencePair(
                root,
                frozenset(tree_edges),
                in_e,
                frozenset(tree_nodes),
                in_n,
                dict(depths),
                in_d,
            )
        return len(in_n)

    def out_reachable(tree_nodes: set[int], banned: set[int]) -> int:
        seen = set(tree_nodes)
        stack = list(tree_nodes)
        while stack:
            u = stack.pop()
            for v, ei in fwd[u]:
                if v not in seen and ei not in banned:
                    seen.add(v)
                    stack.append(v)
        return len(seen)

    def visit(tree_edges: list[int], tree_nodes: set[int], depths: dict[int, int], banned: set[int]):
        in_size = consider(tree_edges, tree_nodes, depths)
        assert best_sizes is not None
        if min(out_reachable(tree_nodes, banned), in_size) < best_sizes[0]:
            # every extension keeps out-span within the residual reach and
            # can only shrink the in-span, so none can tie the incumbent
            return
        frontier = sorted(
            ei
            for u in tree_nodes
            for v, ei in fwd[u]
            if v not in tree_nodes and ei not in banned
        )
        child_banned = set(banned)
        for ei in frontier:
            a, b = edges[ei]
            tree_edges.append(ei)
            tree_nodes.add(b)
            depths[b] = depths[a] + 1
            visit(tree_edges, tree_nodes, depths, set(child_banned))
            tree_edges.pop()
            tree_nodes.discard(b)
            del depths[b]
            # banning the edge for later siblings makes each tree appear once
            child_banned.add(ei)

    visit([], {root}, {root: 0}, set())
    assert best_pair is not None
    return best_pair


def best_root(
    g: Digraph, method: str = "exact", seed: int = 0, limit: int = 20
) -> AstraReport:
    """Run the chosen pair search from every root and report the argmax."""
    if method not in ("exact", "greedy"):
        raise ValueError(f"unknown method {method!r}")
    per_root = []
    for r in range(g.node_count):
        if method == "exact":
            pair = exact_pair(g, r, limit=limit)
        else:
            pair = greedy_pair(g, r, seed=seed)
        per_root.append(pair.min_size)
    best = max(range(g.node_count), key=lambda r: (per_root[r], -r))
    return AstraReport(
        method=method,
        per_root=tuple(per_root),
        best_root=best,
        best_min=per_root[best],
        ratio=per_root[best] / g.node_count,
    )


def check_pair(g: Digraph, pair: ArborescencePair) -> None:
    """Validate every pair invariant from scratch; raises ValueError.

    Independent of how the pair was built: re-derives tree-ness,
    orientation, disjointness, spanned sets and depths from the edge
    lists alone.
    """
    if pair.out_edges & pair.in_edges:
        raise ValueError("out- and in-arborescence share an edge")
    if pair.root not in pair.out_nodes or pair.root not in pair.in_nodes:
        raise ValueError("root not in both spanned node sets")

    def check_tree(edge_ids, nodes, depths, toward_root: bool):
        pairs = [g.edges[ei] for ei in edge_ids]
        if toward_root:
            pairs = [(b, a) for a, b in pairs]
        # now every pair is (parent, child)
        spanned = {pair.root}
        parent = {}
        for a, b in pairs:
            spanned.add(a)
            spanned.add(b)
            if b in parent or b == pair.root:
                raise ValueError("node has two tree parents or root has one")
            parent[b] = a
        if spanned != set(nodes):
            raise ValueError("spanned node set does not match tree edges")
        if len(edge_ids) != len(spanned) - 1:
            raise ValueError("edge count is not node count minus one")
        for v in spanned:
            seen = set()
            d = 0
            u = v
            while u != pair.root:
                if u in seen or u not in parent:
                    raise ValueError("tree edge set contains a cycle or a break")
                seen.add(u)
                u = parent[u]
                d += 1
            if depths.get(v) != d:
                raise ValueError(f"depth of node {v} is wrong")

    check_tree(pair.out_edges, pair.out_nodes, pair.out_depths, toward_root=False)
    check_tree(pair.in_edges, pair.in_nodes, pair.in_depths, toward_root=True)
