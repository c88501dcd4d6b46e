"""Instance generators for arborescence-pair experiments.

`gen_fig3` builds the three-armed windmill family that caps how many
nodes an edge-disjoint common-root arborescence pair can span, and
`gen_random_sc` builds random strongly connected digraphs for sweeps.
Both are deterministic; the windmill also returns a role name per node.
"""

from __future__ import annotations

import random

from .graphs import Digraph


def gen_fig3(k: int) -> tuple[Digraph, tuple[str, ...]]:
    """Windmill graph on n = 3k + 8 nodes with three length-k chains.

    Hub pair (x, y) plus three arms; arm i has gate nodes x_i, y_i and a
    chain z_{i,1} .. z_{i,k} from y_i back to x_i.  All traffic between
    arms funnels through the single edge (x, y), which is what limits
    disjoint arborescence pairs.  Roles use the names above.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    x, y = 0, 1

    def xi(i: int) -> int:
        return 2 + 2 * (i - 1)

    def yi(i: int) -> int:
        return 3 + 2 * (i - 1)

    def z(i: int, j: int) -> int:
        return 8 + (i - 1) * k + (j - 1)

    roles = ["x", "y"]
    for i in (1, 2, 3):
        roles += [f"x_{i}", f"y_{i}"]
    for i in (1, 2, 3):
        roles += [f"z_{i}_{j}" for j in range(1, k + 1)]

    edges = [(x, y)]
    for i in (1, 2, 3):
        edges.append((y, xi(i)))
        edges.append((xi(i), yi(i)))
        edges.append((yi(i), x))
        edges.append((yi(i), z(i, 1)))
        for j in range(1, k):
            edges.append((z(i, j), z(i, j + 1)))
        edges.append((z(i, k), xi(i)))

    return Digraph(3 * k + 8, tuple(edges)), tuple(roles)


def gen_random_sc(n: int, extra_edges: int, seed: int = 0) -> Digraph:
    """Random Hamiltonian cycle plus `extra_edges` distinct non-loop edges.

    The cycle guarantees strong connectivity; the extras are sampled
    without replacement from the remaining ordered pairs.  Deterministic
    for a given (n, extra_edges, seed).
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    slots = n * (n - 1) - n
    if not 0 <= extra_edges <= slots:
        raise ValueError(f"extra_edges must be in [0, {slots}] for n={n}")
    rng = random.Random(seed)
    perm = list(range(n))
    rng.shuffle(perm)
    cycle = [(perm[i], perm[(i + 1) % n]) for i in range(n)]
    taken = set(cycle)
    candidates = [
        (u, v)
        for u in range(n)
        for v in range(n)
        if u != v and (u, v) not in taken
    ]
    extras = rng.sample(candidates, extra_edges)
    return Digraph(n, tuple(cycle + extras))
