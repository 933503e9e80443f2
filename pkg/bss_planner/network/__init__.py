"""Domain model of the BSS design problem: types, costs, evaluation, formulation."""

from .costs import CostTables, euclidean_distance, link_cost, trunk_cost
from .evaluation import check_feasibility, complete_assignment, evaluate
from .formulation import (
    Formulation,
    FormulationStats,
    build_formulation,
    formulation_stats,
    write_lp,
)
from .types import (
    BscCandidate,
    BscConfig,
    BscModel,
    BtsNode,
    CostBreakdown,
    CostRates,
    Instance,
    Site,
    Solution,
    Violation,
)

__all__ = [
    "CostTables",
    "euclidean_distance",
    "link_cost",
    "trunk_cost",
    "check_feasibility",
    "complete_assignment",
    "evaluate",
    "Formulation",
    "FormulationStats",
    "build_formulation",
    "formulation_stats",
    "write_lp",
    "BscCandidate",
    "BscConfig",
    "BscModel",
    "BtsNode",
    "CostBreakdown",
    "CostRates",
    "Instance",
    "Site",
    "Solution",
    "Violation",
]
