"""Temporal reachability toolkit.

Evaluate edge schedules on digraphs, search for reachability-maximising
schedules, compile 3-CNF formulas into reachability-threshold instances
with exact bound arithmetic, and explore edge-disjoint arborescence
pairs.  The ``mret`` command exposes the same operations on files.
"""

from .astra import (
    ArborescencePair,
    AstraReport,
    best_root,
    check_pair,
    exact_pair,
    greedy_pair,
)
from .cnf import CnfFormula, format_dimacs, parse_assignment, parse_dimacs
from .errors import ParseError, ScaleLimitError
from .generators import gen_fig3, gen_random_sc
from .graphs import (
    Digraph,
    Schedule,
    Temporalisation,
    format_digraph,
    format_schedule,
    format_temporal_graph,
    is_strongly_connected,
    parse_digraph,
    parse_schedule,
    parse_temporal_graph,
    parse_times,
)
from .reachability import (
    ReachabilityResult,
    evaluate_schedule,
    evaluate_temporalisation,
    schedule_from_temporalisation,
)
from .reduction import (
    ReductionInstance,
    ReductionParams,
    build_instance,
    certify,
    check_bounds,
    load_instance,
    lower_bound,
    schedule_from_assignment,
    upper_bound_one,
    upper_bound_two,
    variable_gadget_activation,
    write_instance,
)
from .solvers import (
    SolveResult,
    arborescence_order,
    solve_arborescence,
    solve_exact,
    solve_local,
)

__version__ = "0.1.0"

__all__ = [
    "ArborescencePair",
    "AstraReport",
    "CnfFormula",
    "Digraph",
    "ParseError",
    "ReachabilityResult",
    "ReductionInstance",
    "ReductionParams",
    "ScaleLimitError",
    "Schedule",
    "SolveResult",
    "Temporalisation",
    "arborescence_order",
    "best_root",
    "build_instance",
    "certify",
    "check_bounds",
    "check_pair",
    "evaluate_schedule",
    "evaluate_temporalisation",
    "exact_pair",
    "format_digraph",
    "format_dimacs",
    "format_schedule",
    "format_temporal_graph",
    "gen_fig3",
    "gen_random_sc",
    "greedy_pair",
    "is_strongly_connected",
    "load_instance",
    "lower_bound",
    "parse_assignment",
    "parse_digraph",
    "parse_dimacs",
    "parse_schedule",
    "parse_temporal_graph",
    "parse_times",
    "schedule_from_assignment",
    "schedule_from_temporalisation",
    "solve_arborescence",
    "solve_exact",
    "solve_local",
    "upper_bound_one",
    "upper_bound_two",
    "variable_gadget_activation",
    "write_instance",
]
