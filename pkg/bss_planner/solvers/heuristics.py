"""Greedy construction and local search for instances beyond exact reach."""

import logging
import math
from typing import Callable, List, Optional

from bss_planner.exceptions import InfeasibleAssignmentError, InfeasibleSolutionError
from bss_planner.network.costs import CostTables
from bss_planner.network.evaluation import (
    check_feasibility,
    indexed_choice,
    solution_from_indexed,
)
from bss_planner.network.types import Instance, Solution
from bss_planner.solvers.reports import TIE_TOL

logger = logging.getLogger(__name__)

IMPROVE_TOL = 1e-9


def demand_order(tables: CostTables) -> List[int]:
    """BTS positions by decreasing traffic, lowest id first on ties."""
    return sorted(range(tables.n_bts), key=lambda i: (-tables.traffic[i], i))


def greedy_construct(instance: Instance, tables: Optional[CostTables] = None) -> Solution:
    """
    Assign BTS in decreasing-traffic order, each to the BSC with the smallest
    marginal cost (its link plus the step in that BSC's lines-and-model cost).

    Raises:
        InfeasibleAssignmentError: If no BSC can absorb some BTS
    """
    tables = tables or CostTables(instance)
    loads = [0.0] * tables.n_bsc
    step = [0.0] * tables.n_bsc
    choice = [-1] * tables.n_bts

    for i in demand_order(tables):
        a_i = tables.traffic[i]
        best_j, best_delta, best_cost = -1, math.inf, 0.0
        for j in range(tables.n_bsc):
            cost = tables.completion_cost(j, loads[j] + a_i)
            if math.isinf(cost):
                continue
            delta = tables.link[i][j] + cost - step[j]
            if delta < best_delta - TIE_TOL:
                best_j, best_delta, best_cost = j, delta, cost
        if best_j < 0:
            raise InfeasibleAssignmentError(
                instance.bts[i].id, a_i, "no BSC has room for this BTS"
            )
        choice[i] = best_j
        loads[best_j] += a_i
        step[best_j] = best_cost

    solution = solution_from_indexed(tables, choice)
    logger.debug("Greedy objective %.6f", solution.objective)
    return solution


class LocalSearch:
    """
    First-improvement local search over single reassignments and pairwise swaps.

    Lines and models of the touched BSCs are re-completed for every trial move.
    A round is one full pass over both neighborhoods; the search stops at a
    local optimum or after ``max_rounds`` rounds.
    """

    def __init__(
        self,
        instance: Instance,
        max_rounds: int = 50,
        tables: Optional[CostTables] = None,
        on_accept: Optional[Callable[[Solution], None]] = None,
    ):
        self.instance = instance
        self.max_rounds = max_rounds
        self.tables = tables or CostTables(instance)
        self.on_accept = on_accept
        self.rounds = 0
        self.moves = 0

    def _exact_load(self, j: int) -> float:
        traffic = self.tables.traffic
        return math.fsum(traffic[i] for i, owner in enumerate(self.choice) if owner == j)

    def _refresh(self, *bscs: int) -> None:
        for j in bscs:
            self.loads[j] = self._exact_load(j)
            self.step[j] = self.tables.completion_cost(j, self.loads[j])

    def _accepted(self) -> None:
        self.moves += 1
        if self.on_accept is not None:
            self.on_accept(solution_from_indexed(self.tables, self.choice))

    def _reassign_pass(self, tol: float) -> bool:
        t = self.tables
        improved = False
        for i in range(t.n_bts):
            a_i = t.traffic[i]
            src = self.choice[i]
            leave = t.completion_cost(src, self.loads[src] - a_i) - self.step[src]
            for j in range(t.n_bsc):
                if j == src:
                    continue
                join = t.completion_cost(j, self.loads[j] + a_i) - self.step[j]
                delta = t.link[i][j] - t.link[i][src] + join + leave
                if delta < -tol:
                    self.choice[i] = j
                    self._refresh(src, j)
                    self._accepted()
                    improved = True
                    break
        return improved

    def _swap_pass(self, tol: float) -> bool:
        t = self.tables
        improved = False
        for i in range(t.n_bts):
            for k in range(i + 1, t.n_bts):
                ji, jk = self.choice[i], self.choice[k]
                if ji == jk:
                    continue
                shift = t.traffic[k] - t.traffic[i]
                delta = (
                    t.link[i][jk]
                    + t.link[k][ji]
                    - t.link[i][ji]
                    - t.link[k][jk]
                    + t.completion_cost(ji, self.loads[ji] + shift)
                    - self.step[ji]
                    + t.completion_cost(jk, self.loads[jk] - shift)
                    - self.step[jk]
                )
                if delta < -tol:
                    self.choice[i], self.choice[k] = jk, ji
                    self._refresh(ji, jk)
                    self._accepted()
                    improved = True
        return improved

    def run(self, start: Solution) -> Solution:
        """
        Improve ``start`` until no move helps.

        Raises:
            InfeasibleSolutionError: If ``start`` violates the model
        """
        violations = check_feasibility(self.instance, start)
        if violations:
            raise InfeasibleSolutionError(violations, "Local search needs a feasible start")
        self.choice = indexed_choice(self.instance, start.assignment_map)
        self.loads = [0.0] * self.tables.n_bsc
        self.step = [0.0] * self.tables.n_bsc
        self._refresh(*range(self.tables.n_bsc))

        current = start.objective
        while self.rounds < self.max_rounds:
            tol = IMPROVE_TOL * max(1.0, abs(current))
            moved = self._reassign_pass(tol)
            moved = self._swap_pass(tol) or moved
            self.rounds += 1
            if not moved:
                break
            current = solution_from_indexed(self.tables, self.choice).objective
            logger.debug("Local search round %d objective %.6f", self.rounds, current)

        if self.moves == 0:
            return start
        return solution_from_indexed(self.tables, self.choice)


def local_search(
    instance: Instance,
    start: Solution,
    max_rounds: int = 50,
    tables: Optional[CostTables] = None,
    on_accept: Optional[Callable[[Solution], None]] = None,
) -> Solution:
    """Run :class:`LocalSearch` from ``start`` and return the local optimum."""
    return LocalSearch(instance, max_rounds, tables, on_accept).run(start)
