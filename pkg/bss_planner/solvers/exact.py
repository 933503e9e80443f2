"""Depth-first branch-and-bound over BTS assignments.

Nodes fix the BSC of the BTS in decreasing-traffic order; children try BSCs
by ascending link cost. The node bound is

    committed links + sum over BSCs of the cheapest (lines + model) cost for
    their current partial traffic + min(A, F + B)

where, over the still unassigned BTS, B sums each one's cheapest link, A sums
each loaded BTS's cheapest link to an already loaded BSC, and F is the
cheapest opening cost among BSCs without traffic. Either every remaining
loaded BTS joins a loaded BSC (cost >= A) or some new BSC opens (>= F + B),
so the bound is valid, and it never decreases from parent to child.
"""

import logging
import math
import time
from typing import List, Optional, Tuple

from bss_planner.exceptions import InfeasibleAssignmentError
from bss_planner.network.costs import CostTables
from bss_planner.network.evaluation import complete_indexed, solution_from_indexed
from bss_planner.network.types import Instance, Solution
from bss_planner.solvers.heuristics import demand_order, greedy_construct, local_search
from bss_planner.solvers.reports import (
    SolveLimits,
    SolveReport,
    is_better,
    prune_tolerance,
)

logger = logging.getLogger(__name__)

_CLOCK_EVERY = 256


def root_lower_bound(instance: Instance, tables: Optional[CostTables] = None) -> float:
    """Sum over BTS of their cheapest link; trunk and model terms are bounded by 0."""
    tables = tables or CostTables(instance)
    total = 0.0
    for i in range(tables.n_bts):
        total += tables.min_link[i]
    return total


class _LimitReached(Exception):
    pass


class BranchAndBound:
    """
    Exact solver state for one instance.

    Args:
        instance: Problem instance
        limits: Optional time and node limits
        incumbent: Starting incumbent (greedy + local search when omitted and
            ``seed_incumbent`` is true)
        seed_incumbent: Whether to build a heuristic incumbent
        check_bounds: Assert bound(child) >= bound(parent) on every expansion
    """

    def __init__(
        self,
        instance: Instance,
        limits: Optional[SolveLimits] = None,
        incumbent: Optional[Solution] = None,
        seed_incumbent: bool = True,
        check_bounds: bool = False,
        tables: Optional[CostTables] = None,
    ):
        self.instance = instance
        self.limits = limits or SolveLimits()
        self.tables = tables or CostTables(instance)
        self.check_bounds = check_bounds
        t = self.tables

        self.order = demand_order(t)
        self.children = [
            sorted(range(t.n_bsc), key=lambda j, i=i: (t.link[i][j], j)) for i in range(t.n_bts)
        ]
        self.opening = [t.opening_cost(j) for j in range(t.n_bsc)]
        self.by_opening = sorted(range(t.n_bsc), key=lambda j: (self.opening[j], j))

        n = t.n_bts
        self.suffix_min_link = [0.0] * (n + 1)
        self.suffix_loaded = [0] * (n + 1)
        for d in range(n - 1, -1, -1):
            i = self.order[d]
            self.suffix_min_link[d] = self.suffix_min_link[d + 1] + t.min_link[i]
            self.suffix_loaded[d] = self.suffix_loaded[d + 1] + (1 if t.traffic[i] > 0 else 0)

        self._bsc_pos = {b.id: j for j, b in enumerate(instance.bsc)}
        self.best_objective = math.inf
        self.best_key: Optional[Tuple[int, ...]] = None
        self.best_choice: Optional[List[int]] = None
        if incumbent is None and seed_incumbent:
            start = greedy_construct(instance, t)
            incumbent = local_search(instance, start, tables=t)
        if incumbent is not None:
            self._offer(
                incumbent.objective,
                [self._bsc_pos[b] for b in incumbent.assignment_key()],
            )

        self.nodes = 0
        self.frontier_bound = math.inf

    def _offer(self, objective: float, choice: List[int]) -> None:
        key = tuple(self.instance.bsc[j].id for j in choice)
        if is_better(objective, key, self.best_objective, self.best_key):
            self.best_objective = objective
            self.best_key = key
            self.best_choice = list(choice)
            logger.debug("New incumbent %.6f", objective)

    # -- bound pieces ---------------------------------------------------------

    def _remainder(self, depth: int, opened: List[bool], min_open: List[float]) -> float:
        """min(A, F + B) over BTS order[depth:], or B when none of them carries traffic."""
        t = self.tables
        b_sum = self.suffix_min_link[depth]
        if self.suffix_loaded[depth] == 0:
            return b_sum
        a_sum = 0.0
        for d in range(depth, t.n_bts):
            i = self.order[d]
            a_sum += min_open[i] if t.traffic[i] > 0 else t.min_link[i]
        f_min = math.inf
        for j in self.by_opening:
            if not opened[j]:
                f_min = self.opening[j]
                break
        return min(a_sum, f_min + b_sum)

    # -- search ---------------------------------------------------------------

    def _tick(self) -> None:
        self.nodes += 1
        lim = self.limits
        if lim.node_limit is not None and self.nodes > lim.node_limit:
            raise _LimitReached
        if lim.time_limit is not None and self.nodes % _CLOCK_EVERY == 0:
            if time.perf_counter() - self._started > lim.time_limit:
                raise _LimitReached

    def _dfs(self, depth: int, committed: float, bound: float) -> None:
        try:
            self._tick()
        except _LimitReached:
            self.frontier_bound = min(self.frontier_bound, bound)
            raise
        t = self.tables
        if depth == t.n_bts:
            try:
                objective, _ = complete_indexed(t, self.choice)
            except InfeasibleAssignmentError:
                # Load summed in BTS-id order landed just past a capacity step.
                return
            self._offer(objective, self.choice)
            return

        i = self.order[depth]
        a_i = t.traffic[i]
        expansions = []
        for j in self.children[i]:
            new_step = t.completion_cost(j, self.loads[j] + a_i)
            if math.isinf(new_step):
                continue
            child_committed = committed + t.link[i][j] + new_step - self.step[j]
            opens = a_i > 0 and not self.opened[j]
            if opens:
                self.opened[j] = True
                saved = self.min_open[:]
                for k in range(t.n_bts):
                    if t.link[k][j] < self.min_open[k]:
                        self.min_open[k] = t.link[k][j]
                child_bound = child_committed + self._remainder(
                    depth + 1, self.opened, self.min_open
                )
                self.min_open = saved
                self.opened[j] = False
            else:
                child_bound = child_committed + self._remainder(
                    depth + 1, self.opened, self.min_open
                )
            if self.check_bounds:
                assert child_bound >= bound - 1e-7 * max(1.0, abs(bound)), (
                    f"bound decreased from {bound} to {child_bound} at depth {depth}"
                )
            expansions.append((j, new_step, child_committed, child_bound))

        for pos, (j, new_step, child_committed, child_bound) in enumerate(expansions):
            if child_bound > self.best_objective + prune_tolerance(self.best_objective):
                continue
            old_load, old_step = self.loads[j], self.step[j]
            opens = a_i > 0 and not self.opened[j]
            saved = None
            if opens:
                self.opened[j] = True
                saved = self.min_open[:]
                for k in range(t.n_bts):
                    if t.link[k][j] < self.min_open[k]:
                        self.min_open[k] = t.link[k][j]
            self.choice[i] = j
            self.loads[j] = old_load + a_i
            self.step[j] = new_step
            try:
                self._dfs(depth + 1, child_committed, child_bound)
            except _LimitReached:
                for _, _, _, rest_bound in expansions[pos + 1 :]:
                    self.frontier_bound = min(self.frontier_bound, rest_bound)
                raise
            finally:
                self.choice[i] = -1
                self.loads[j], self.step[j] = old_load, old_step
                if opens:
                    self.opened[j] = False
                    self.min_open = saved

    def solve(self) -> SolveReport:
        """Run the search and return the best solution with a valid lower bound."""
        t = self.tables
        self._started = time.perf_counter()
        self.choice = [-1] * t.n_bts
        self.loads = [0.0] * t.n_bsc
        self.step = [0.0] * t.n_bsc
        self.opened = [False] * t.n_bsc
        self.min_open = [math.inf] * t.n_bts
        root = self._remainder(0, self.opened, self.min_open)
        logger.info(
            "Branch-and-bound |T|=%d |B|=%d root bound %.6f incumbent %.6f",
            t.n_bts,
            t.n_bsc,
            root,
            self.best_objective,
        )

        optimal = True
        try:
            self._dfs(0, 0.0, root)
        except _LimitReached:
            optimal = False
            logger.warning("Search limit reached after %d nodes", self.nodes)

        if self.best_choice is None:
            # Only possible when no incumbent was seeded and the limit hit first.
            fallback = greedy_construct(self.instance, t)
            self._offer(fallback.objective, [self._bsc_pos[b] for b in fallback.assignment_key()])
        assert self.best_choice is not None

        solution = solution_from_indexed(t, self.best_choice)
        lower = solution.objective if optimal else min(solution.objective, self.frontier_bound)
        elapsed = time.perf_counter() - self._started
        logger.info(
            "Branch-and-bound done: objective %.6f bound %.6f optimal=%s nodes=%d %.3fs",
            solution.objective,
            lower,
            optimal,
            self.nodes,
            elapsed,
        )
        return SolveReport(
            solution=solution,
            lower_bound=lower,
            optimal=optimal,
            nodes_explored=self.nodes,
            elapsed=elapsed,
        )


def solve_exact(
    instance: Instance,
    limits: Optional[SolveLimits] = None,
    incumbent: Optional[Solution] = None,
    check_bounds: bool = False,
) -> SolveReport:
    """
    Solve ``instance`` to optimality (or until a limit) by branch-and-bound.

    Among equal-cost optima the assignment that is lexicographically smallest
    by BTS id wins, so repeated runs return the same solution.

    Args:
        instance: Validated problem instance
        limits: Optional time and node limits
        incumbent: Optional starting solution
        check_bounds: Assert bound monotonicity along every branch

    Returns:
        SolveReport; ``optimal`` is False when a limit stopped the search
    """
    return BranchAndBound(instance, limits, incumbent, check_bounds=check_bounds).solve()


__all__ = ["BranchAndBound", "root_lower_bound", "solve_exact"]
