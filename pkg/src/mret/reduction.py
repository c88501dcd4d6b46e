"""3-CNF to reachability-maximization hardness instances.

Given a strict 3-CNF formula, `build_instance` emits a strongly
connected digraph of variable, clause, and block gadgets, sized by two
parameters K and M, together with three exact integer bounds L, U1, U2.
A satisfying assignment converts into a schedule whose total
reachability reaches L (`schedule_from_assignment`, `certify`), while
for unsatisfiable formulas at official parameter sizes every schedule
stays below L; that direction rests on the bound arithmetic, checked by
`check_bounds`, not on search.

Node layout (deterministic ids): u1,u2,u3,u4; b_1..b_M; then per
variable i: t_i^1,t_i^2,f_i^1,f_i^2; then per clause j: c_j^1,c_j^2,
d_j^1..d_j^K,e_j^1..e_j^K.

Edge emission order: variable 4-cycles; clause-literal attachments;
inter-clause (c_j^1,c_h^2) edges; d/e attachments; block edges.  The
schedule phases rely on this order being stable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .cnf import CnfFormula
from .errors import ParseError
from .graphs import (
    Digraph,
    Schedule,
    format_digraph,
    is_strongly_connected,
    parse_digraph,
)
from .reachability import evaluate_schedule


@dataclass(frozen=True)
class ReductionParams:
    n: int
    m: int
    K: int
    M: int

    def __post_init__(self):
        for name in ("n", "m", "K", "M"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be at least 1")

    @property
    def h_size(self) -> int:
        return 2 * (self.K + 1) * self.m + 4 * self.n

    @property
    def official(self) -> bool:
        return self.K >= 91 * self.n * self.m and self.M > (self.h_size + 5) ** 2

    @classmethod
    def official_for(cls, n: int, m: int) -> "ReductionParams":
        K = 91 * n * m
        h_size = 2 * (K + 1) * m + 4 * n
        return cls(n, m, K, (h_size + 5) ** 2 + 1)

    @property
    def node_count(self) -> int:
        return self.M + self.h_size + 4

    @property
    def edge_count(self) -> int:
        n, m, K, M = self.n, self.m, self.K, self.M
        return 4 * n + 6 * m + m * (m - 1) + 4 * K * m + 2 * M + 2


def lower_bound(p: ReductionParams) -> int:
    """Total reachability guaranteed by a satisfying-assignment schedule."""
    n, m, K, M, H = p.n, p.m, p.K, p.M, p.h_size
    return (
        M * (M + H + 4)
        + (4 * M + 2 * H + 10)
        + K * m * (M + K * m + m)
        + m * (M + K * m + m)
        + 4 * n * (M + K)
        + m * (M + K)
        + M * K * m
    )


def upper_bound_one(p: ReductionParams) -> int:
    """Cap when (u3,u4) fires before (u1,u2): block nodes stop mixing."""
    M, H = p.M, p.h_size
    return M * (H + 4 + 1) + (H + 4) * (M + H + 4)


def upper_bound_two(p: ReductionParams) -> int:
    """Cap for unsatisfiable formulas when (u1,u2) fires first."""
    n, m, K, M, H = p.n, p.m, p.K, p.M, p.h_size
    return (
        M * (M + H + 4)
        + (4 * M + 3 * H + 15)
        + (K * m * (M + K * m + m + 17) - K * K)
        + m * (M + K * m + m + 16)
        + 4 * n * (M + K * m + m + 7)
        + m * (M + K + 4)
        + K * m * (M + 4)
    )


def check_bounds(p: ReductionParams) -> dict:
    """Exact integer bound report; official parameters must separate L."""
    L = lower_bound(p)
    u1 = upper_bound_one(p)
    u2 = upper_bound_two(p)
    if p.official:
        assert L - u1 > 0 and L - u2 > 0
    return {
        "L": L,
        "U1": u1,
        "U2": u2,
        "L_minus_U1": L - u1,
        "L_minus_U2": L - u2,
        "official": p.official,
    }


class _Layout:
    """Node-id arithmetic for the deterministic layout."""

    U1, U2, U3, U4 = 0, 1, 2, 3

    def __init__(self, p: ReductionParams):
        self.p = p
        self.var_base = 4 + p.M
        self.clause_base = self.var_base + 4 * p.n
        self.clause_stride = 2 + 2 * p.K

    def b(self, i: int) -> int:  # i in 1..M
        return 4 + (i - 1)

    def t1(self, i: int) -> int:  # i in 1..n
        return self.var_base + 4 * (i - 1)

    def t2(self, i: int) -> int:
        return self.t1(i) + 1

    def f1(self, i: int) -> int:
        return self.t1(i) + 2

    def f2(self, i: int) -> int:
        return self.t1(i) + 3

    def c1(self, j: int) -> int:  # j in 1..m
        return self.clause_base + self.clause_stride * (j - 1)

    def c2(self, j: int) -> int:
        return self.c1(j) + 1

    def d(self, j: int, l: int) -> int:  # l in 1..K
        return self.c1(j) + 2 + (l - 1)

    def e(self, j: int, l: int) -> int:
        return self.c1(j) + 2 + self.p.K + (l - 1)

    def roles(self) -> tuple[str, ...]:
        p = self.p
        out = ["u1", "u2", "u3", "u4"]
        out += [f"b_{i}" for i in range(1, p.M + 1)]
        for i in range(1, p.n + 1):
            out += [f"t_{i}^1", f"t_{i}^2", f"f_{i}^1", f"f_{i}^2"]
        for j in range(1, p.m + 1):
            out += [f"c_{j}^1", f"c_{j}^2"]
            out += [f"d_{j}^{l}" for l in range(1, p.K + 1)]
            out += [f"e_{j}^{l}" for l in range(1, p.K + 1)]
        return tuple(out)


@dataclass(frozen=True)
class ReductionInstance:
    digraph: Digraph
    roles: tuple[str, ...]
    params: ReductionParams
    formula: CnfFormula
    bounds: tuple[int, int, int]  # (L, U1, U2)


def build_instance(
    f: CnfFormula,
    k_override: int | None = None,
    m_override: int | None = None,
) -> ReductionInstance:
    n, m = f.variable_count, f.clause_count
    K = 91 * n * m if k_override is None else k_override
    if K < 1:
        raise ValueError("K must be at least 1")
    h_size = 2 * (K + 1) * m + 4 * n
    M = (h_size + 5) ** 2 + 1 if m_override is None else m_override
    params = ReductionParams(n, m, K, M)
    lay = _Layout(params)

    edges: list[tuple[int, int]] = []
    for i in range(1, n + 1):
        edges += [
            (lay.t1(i), lay.f2(i)),
            (lay.f2(i), lay.f1(i)),
            (lay.f1(i), lay.t2(i)),
            (lay.t2(i), lay.t1(i)),
        ]
    for j, clause in enumerate(f.clauses, start=1):
        for v, positive in clause:
            i = v + 1
            if positive:
                edges += [(lay.c1(j), lay.t1(i)), (lay.t2(i), lay.c2(j))]
            else:
                edges += [(lay.c1(j), lay.f1(i)), (lay.f2(i), lay.c2(j))]
    for j in range(1, m + 1):
        edges += [(lay.c1(j), lay.c2(h)) for h in range(1, m + 1) if h != j]
    for j in range(1, m + 1):
        edges += [(lay.d(j, l), lay.c1(j)) for l in range(1, params.K + 1)]
        edges += [(lay.c2(j), lay.e(j, l)) for l in range(1, params.K + 1)]
    edges += [(lay.b(i), lay.U1) for i in range(1, M + 1)]
    edges.append((lay.U1, lay.U2))
    for j in range(1, m + 1):
        edges += [(lay.U2, lay.d(j, l)) for l in range(1, params.K + 1)]
    for j in range(1, m + 1):
        edges += [(lay.e(j, l), lay.U3) for l in range(1, params.K + 1)]
    edges.append((lay.U3, lay.U4))
    edges += [(lay.U4, lay.b(i)) for i in range(1, M + 1)]

    g = Digraph(params.node_count, tuple(edges))
    assert g.edge_count == params.edge_count
    bounds = (lower_bound(params), upper_bound_one(params), upper_bound_two(params))
    return ReductionInstance(g, lay.roles(), params, f, bounds)


def variable_gadget_activation(times: Sequence[int]) -> tuple[bool, bool]:
    """Which of the pairs (t^1,t^2) and (f^1,f^2) a gadget order activates.

    `times` holds one distinct time per gadget edge, in the layout order
    (t^1,f^2), (f^2,f^1), (f^1,t^2), (t^2,t^1).  The t-pair needs the
    first three edges increasing; the f-pair needs edges 2, 3, 0
    increasing.  Both at once is impossible: edge 0 cannot be on each
    side of edge 2.
    """
    t_active = times[0] < times[1] < times[2]
    f_active = times[2] < times[3] < times[0]
    return t_active, f_active


def schedule_from_assignment(
    inst: ReductionInstance, assignment: Sequence[bool]
) -> Schedule:
    """The constructive schedule whose total reaches the L bound.

    Eleven phases: block edges feed u1->u2, then d-nodes, then the
    clause entries; each variable gadget fires in the rotation picked by
    its truth value; then the clause exits, e-nodes, u3->u4, and back to
    the block.  Within a phase, edge-index order.
    """
    if not inst.formula.satisfies(assignment):
        raise ValueError("assignment does not satisfy the formula")
    p = inst.params
    lay = _Layout(p)
    var_lo, var_hi = lay.var_base, lay.var_base + 4 * p.n
    phases: list[list[int]] = [[] for _ in range(11)]

    def clause_off(v: int) -> int:
        return (v - lay.clause_base) % lay.clause_stride

    for idx, (a, b) in enumerate(inst.digraph.edges):
        if var_lo <= a < var_hi and var_lo <= b < var_hi:
            continue  # variable gadgets are laid out separately below
        if b == lay.U1:
            phases[0].append(idx)
        elif a == lay.U1:
            phases[1].append(idx)
        elif a == lay.U2:
            phases[2].append(idx)
        elif a >= lay.clause_base and clause_off(a) >= 2 + p.K:
            phases[8].append(idx)  # (e, u3)
        elif a == lay.U3:
            phases[9].append(idx)
        elif a == lay.U4:
            phases[10].append(idx)
        elif a >= lay.clause_base and clause_off(a) >= 2:
            phases[3].append(idx)  # (d, c1)
        elif a >= lay.clause_base and clause_off(a) == 0:
            phases[4].append(idx)  # out of c1: gadget entries and dashed
        elif a >= lay.clause_base and clause_off(a) == 1:
            phases[7].append(idx)  # (c2, e)
        else:
            assert var_lo <= a < var_hi and b >= lay.clause_base
            phases[6].append(idx)  # gadget exits into c2
    for i in range(1, p.n + 1):
        base = 4 * (i - 1)
        if assignment[i - 1]:
            phases[5] += [base, base + 1, base + 2, base + 3]
        else:
            phases[5] += [base + 2, base + 3, base, base + 1]
    return Schedule(tuple(idx for phase in phases for idx in phase))


def certify(inst: ReductionInstance, s: Schedule) -> dict:
    """Engine-evaluated total versus the instance's L bound."""
    if len(s.order) != inst.digraph.edge_count:
        raise ValueError(
            f"schedule has {len(s.order)} entries for "
            f"{inst.digraph.edge_count} edges"
        )
    total = evaluate_schedule(inst.digraph, s).total
    return {"total": total, "L": inst.bounds[0], "meets_L": total >= inst.bounds[0]}


def write_instance(inst: ReductionInstance, prefix: str | Path) -> list[Path]:
    """Write <prefix>.digraph, <prefix>.roles, <prefix>.manifest.json."""
    prefix = Path(prefix)
    p = inst.params
    graph_path = prefix.with_suffix(prefix.suffix + ".digraph")
    roles_path = prefix.with_suffix(prefix.suffix + ".roles")
    manifest_path = prefix.with_suffix(prefix.suffix + ".manifest.json")
    graph_path.write_text(format_digraph(inst.digraph))
    roles_path.write_text(
        "".join(f"{i} {role}\n" for i, role in enumerate(inst.roles))
    )
    manifest = {
        "n": p.n,
        "m": p.m,
        "K": p.K,
        "M": p.M,
        "H_size": p.h_size,
        "node_count": p.node_count,
        "edge_count": p.edge_count,
        "L": str(inst.bounds[0]),
        "U1": str(inst.bounds[1]),
        "U2": str(inst.bounds[2]),
    }
    manifest_path.write_text(json.dumps(manifest, indent=2) + "\n")
    return [graph_path, roles_path, manifest_path]


def load_instance(prefix: str | Path) -> ReductionInstance:
    """Rebuild an instance from its files and verify their consistency.

    The formula is recovered from the clause-entry edges, the instance
    is rebuilt from scratch, and the stored graph and roles must match
    the rebuild exactly.
    """
    prefix = Path(prefix)
    graph_path = prefix.with_suffix(prefix.suffix + ".digraph")
    roles_path = prefix.with_suffix(prefix.suffix + ".roles")
    manifest_path = prefix.with_suffix(prefix.suffix + ".manifest.json")
    try:
        manifest = json.loads(manifest_path.read_text())
        n, m, K, M = (int(manifest[k]) for k in ("n", "m", "K", "M"))
    except (OSError, KeyError, ValueError, json.JSONDecodeError) as exc:
        raise ParseError(f"bad manifest {manifest_path}: {exc}") from None
    g = parse_digraph(graph_path.read_text())
    lay = _Layout(ReductionParams(n, m, K, M))

    literals: dict[int, list[tuple[int, bool]]] = {j: [] for j in range(1, m + 1)}
    for a, b in g.edges:
        if a >= lay.clause_base and (a - lay.clause_base) % lay.clause_stride == 0:
            if b >= lay.clause_base or b < lay.var_base:
                continue  # dashed edge, not a gadget entry
            j = (a - lay.clause_base) // lay.clause_stride + 1
            off = (b - lay.var_base) % 4
            variable = (b - lay.var_base) // 4
            literals[j].append((variable, off == 0))
    try:
        formula = CnfFormula(n, tuple(tuple(literals[j]) for j in range(1, m + 1)))
    except ValueError as exc:
        raise ParseError(f"instance files do not encode a valid formula: {exc}") from None
    rebuilt = build_instance(formula, k_override=K, m_override=M)
    if rebuilt.digraph != g:
        raise ParseError(f"{graph_path} does not match its manifest parameters")
    roles = tuple(
        line.split(maxsplit=1)[1]
        for line in roles_path.read_text().splitlines()
        if line.strip()
    )
    if roles != rebuilt.roles:
        raise ParseError(f"{roles_path} does not match the rebuilt layout")
    if str(rebuilt.bounds[0]) != str(manifest.get("L")):
        raise ParseError(f"{manifest_path} L bound does not match parameters")
    return rebuilt
