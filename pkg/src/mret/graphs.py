"""Directed-graph data model, time assignments, and plain-text file formats.

A `Digraph` is an immutable directed graph whose edges keep the index
they had in the input: edge i is the i-th line of the file and is never
reordered.  Every other type in the package refers to edges through
these indices.  Time is attached to edges either as a `Temporalisation`
(one natural label per edge, ties allowed) or as a `Schedule` (a
permutation of the edge indices, i.e. the canonical all-distinct
temporalisation).

File formats (UTF-8, LF line endings; writers emit the canonical form
with single spaces and no trailing whitespace):

* digraph file:        ``n m`` header, then m lines ``tail head``
* temporal-graph file: ``n m`` header, then m lines ``tail head time``
* schedule file:       one line of m whitespace-separated edge indices
* times file:          one line of m whitespace-separated labels >= 1

Lines starting with ``#`` are ignored on input.  All objects here are
immutable after construction and safe to share across threads.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property

from .errors import ParseError


@dataclass(frozen=True)
class Digraph:
    """Immutable digraph with stable, 0-based edge indices.

    Self-loops and parallel edges are representable (the file format
    allows them); solvers and the reduction reject self-loops at their
    own boundaries.
    """

    node_count: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.node_count < 0:
            raise ValueError("node_count must be non-negative")
        edges = tuple((int(a), int(b)) for a, b in self.edges)
        object.__setattr__(self, "edges", edges)
        for i, (a, b) in enumerate(edges):
            if not (0 <= a < self.node_count and 0 <= b < self.node_count):
                raise ValueError(
                    f"edge {i} endpoint out of range: ({a}, {b}) with n={self.node_count}"
                )

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def out_adj(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per node, the outgoing (head, edge_index) pairs in edge order."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.node_count)]
        for i, (a, b) in enumerate(self.edges):
            adj[a].append((b, i))
        return tuple(tuple(row) for row in adj)

    @cached_property
    def in_adj(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per node, the incoming (tail, edge_index) pairs in edge order."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.node_count)]
        for i, (a, b) in enumerate(self.edges):
            adj[b].append((a, i))
        return tuple(tuple(row) for row in adj)

    def self_loops(self) -> list[int]:
        """Indices of self-loop edges, in edge order."""
        return [i for i, (a, b) in enumerate(self.edges) if a == b]


@dataclass(frozen=True)
class Temporalisation:
    """One natural time label (>= 1) per edge index; ties allowed."""

    times: tuple[int, ...]

    def __post_init__(self):
        times = tuple(int(t) for t in self.times)
        object.__setattr__(self, "times", times)
        for i, t in enumerate(times):
            if t < 1:
                raise ValueError(f"time label of edge {i} must be >= 1, got {t}")


@dataclass(frozen=True)
class Schedule:
    """A permutation of edge indices: position in `order` is the edge's time."""

    order: tuple[int, ...]

    def __post_init__(self):
        order = tuple(int(i) for i in self.order)
        object.__setattr__(self, "order", order)
        if sorted(order) != list(range(len(order))):
            raise ValueError("order is not a permutation of 0..m-1")


def _data_lines(text: str) -> list[tuple[int, str]]:
    """Non-empty, non-comment lines with their 1-based line numbers."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        out.append((lineno, line))
    return out


def _ints(line: str, lineno: int, expect: int, what: str) -> list[int]:
    parts = line.split()
    if len(parts) != expect:
        raise ParseError(f"{what}: expected {expect} fields, got {len(parts)}", lineno)
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise ParseError(f"{what}: non-integer field in {line!r}", lineno) from None


def parse_digraph(text: str) -> Digraph:
    """Parse the digraph file format; errors carry line numbers."""
    lines = _data_lines(text)
    if not lines:
        raise ParseError("empty digraph file")
    lineno, header = lines[0]
    n, m = _ints(header, lineno, 2, "header")
    if n < 0 or m < 0:
        raise ParseError("header counts must be non-negative", lineno)
    body = lines[1:]
    if len(body) != m:
        raise ParseError(f"expected {m} edge lines, found {len(body)}", lineno)
    edges = []
    for lineno, line in body:
        a, b = _ints(line, lineno, 2, "edge")
        if not (0 <= a < n and 0 <= b < n):
            raise ParseError(f"endpoint out of range: ({a}, {b}) with n={n}", lineno)
        edges.append((a, b))
    return Digraph(n, tuple(edges))


def format_digraph(g: Digraph) -> str:
    lines = [f"{g.node_count} {g.edge_count}"]
    lines.extend(f"{a} {b}" for a, b in g.edges)
    return "\n".join(lines) + "\n"


def parse_temporal_graph(text: str) -> tuple[Digraph, Temporalisation]:
    """Parse the temporal-graph file format (``tail head time`` lines)."""
    lines = _data_lines(text)
    if not lines:
        raise ParseError("empty temporal-graph file")
    lineno, header = lines[0]
    n, m = _ints(header, lineno, 2, "header")
    if n < 0 or m < 0:
        raise ParseError("header counts must be non-negative", lineno)
    body = lines[1:]
    if len(body) != m:
        raise ParseError(f"expected {m} edge lines, found {len(body)}", lineno)
    edges = []
    times = []
    for lineno, line in body:
        a, b, t = _ints(line, lineno, 3, "temporal edge")
        if not (0 <= a < n and 0 <= b < n):
            raise ParseError(f"endpoint out of range: ({a}, {b}) with n={n}", lineno)
        if t < 1:
            raise ParseError(f"time label must be >= 1, got {t}", lineno)
        edges.append((a, b))
        times.append(t)
    return Digraph(n, tuple(edges)), Temporalisation(tuple(times))


def format_temporal_graph(g: Digraph, t: Temporalisation) -> str:
    if len(t.times) != g.edge_count:
        raise ValueError("temporalisation length does not match edge count")
    lines = [f"{g.node_count} {g.edge_count}"]
    lines.extend(f"{a} {b} {lab}" for (a, b), lab in zip(g.edges, t.times))
    return "\n".join(lines) + "\n"


def parse_schedule(text: str, edge_count: int) -> Schedule:
    """Parse a schedule file: one line of `edge_count` edge indices."""
    lines = _data_lines(text)
    if edge_count == 0 and not lines:
        return Schedule(())
    if len(lines) != 1:
        raise ParseError(f"schedule file must have exactly one data line, found {len(lines)}")
    lineno, line = lines[0]
    try:
        order = [int(p) for p in line.split()]
    except ValueError:
        raise ParseError("non-integer edge index", lineno) from None
    if len(order) != edge_count:
        raise ParseError(f"expected {edge_count} edge indices, got {len(order)}", lineno)
    try:
        return Schedule(tuple(order))
    except ValueError as exc:
        raise ParseError(str(exc), lineno) from None


def format_schedule(s: Schedule) -> str:
    return " ".join(str(i) for i in s.order) + "\n"


def parse_times(text: str, edge_count: int) -> Temporalisation:
    """Parse a times file: one line of `edge_count` labels >= 1."""
    lines = _data_lines(text)
    if edge_count == 0 and not lines:
        return Temporalisation(())
    if len(lines) != 1:
        raise ParseError(f"times file must have exactly one data line, found {len(lines)}")
    lineno, line = lines[0]
    try:
        times = [int(p) for p in line.split()]
    except ValueError:
        raise ParseError("non-integer time label", lineno) from None
    if len(times) != edge_count:
        raise ParseError(f"expected {edge_count} time labels, got {len(times)}", lineno)
    try:
        return Temporalisation(tuple(times))
    except ValueError as exc:
        raise ParseError(str(exc), lineno) from None


def _reaches_all(start: int, adj) -> bool:
    seen = bytearray(len(adj))
    seen[start] = 1
    count = 1
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v, _ in adj[u]:
            if not seen[v]:
                seen[v] = 1
                count += 1
                queue.append(v)
    return count == len(adj)


def is_strongly_connected(g: Digraph) -> bool:
    """True iff every node reaches every node in the static digraph.

    Linear time: node 0 must reach all nodes forwards and backwards.
    """
    if g.node_count <= 1:
        return True
    return _reaches_all(0, g.out_adj) and _reaches_all(0, g.in_adj)
