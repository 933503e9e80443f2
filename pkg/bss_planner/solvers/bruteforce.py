"""Exhaustive enumeration of every assignment; the oracle for tiny instances."""

import itertools
import logging
import math
import time
from typing import Optional, Tuple

from bss_planner.exceptions import EnumerationLimitError, InfeasibleAssignmentError
from bss_planner.network.costs import CostTables
from bss_planner.network.evaluation import complete_indexed, solution_from_indexed
from bss_planner.network.types import Instance
from bss_planner.solvers.reports import SolveReport, is_better

logger = logging.getLogger(__name__)

DEFAULT_ENUM_CAP = 10_000_000


def solve_bruteforce(instance: Instance, cap: int = DEFAULT_ENUM_CAP) -> SolveReport:
    """
    Enumerate all |B|^|T| assignments and keep the cheapest feasible one.

    Each assignment is completed exactly as :func:`complete_assignment` would,
    and ties go to the lexicographically smallest assignment.

    Raises:
        EnumerationLimitError: If |B|^|T| exceeds ``cap``
    """
    tables = CostTables(instance)
    size = tables.n_bsc ** tables.n_bts
    if size > cap:
        raise EnumerationLimitError(size, cap)

    started = time.perf_counter()
    best_obj = math.inf
    best_key: Optional[Tuple[int, ...]] = None
    best_choice: Optional[Tuple[int, ...]] = None
    ids = [b.id for b in instance.bsc]
    count = 0
    for choice in itertools.product(range(tables.n_bsc), repeat=tables.n_bts):
        count += 1
        try:
            objective, _ = complete_indexed(tables, choice)
        except InfeasibleAssignmentError:
            continue
        key = tuple(ids[j] for j in choice)
        if is_better(objective, key, best_obj, best_key):
            best_obj, best_key, best_choice = objective, key, choice

    if best_choice is None:
        raise InfeasibleAssignmentError(
            ids[0], instance.total_traffic, "no assignment is feasible"
        )
    solution = solution_from_indexed(tables, best_choice)
    elapsed = time.perf_counter() - started
    logger.info("Enumerated %d assignments; optimum %.6f", count, solution.objective)
    return SolveReport(
        solution=solution,
        lower_bound=solution.objective,
        optimal=True,
        nodes_explored=count,
        elapsed=elapsed,
    )
