"""Exact, enumerative and heuristic solvers sharing one cost arithmetic."""

from .bruteforce import DEFAULT_ENUM_CAP, solve_bruteforce
from .exact import BranchAndBound, root_lower_bound, solve_exact
from .heuristics import LocalSearch, greedy_construct, local_search
from .lagrangian import DualEvaluation, StepRule, dual_value, lagrangian_lower_bound, solve_with_bound
from .reports import (
    TIE_TOL,
    HeuristicReport,
    Multipliers,
    SolveLimits,
    SolveReport,
    is_better,
    relative_gap,
)

__all__ = [
    "DEFAULT_ENUM_CAP",
    "solve_bruteforce",
    "BranchAndBound",
    "root_lower_bound",
    "solve_exact",
    "LocalSearch",
    "greedy_construct",
    "local_search",
    "DualEvaluation",
    "StepRule",
    "dual_value",
    "lagrangian_lower_bound",
    "solve_with_bound",
    "TIE_TOL",
    "HeuristicReport",
    "Multipliers",
    "SolveLimits",
    "SolveReport",
    "is_better",
    "relative_gap",
]
