"""Lagrangian lower bound with a simple subgradient method.

The assignment rows (each BTS to exactly one BSC) are relaxed with one free
multiplier per BTS. What remains splits per BSC: choose a line count c and a
model w, then a set of BTS with reduced cost ct_ij - lambda_i whose traffic fits
min(f_c, e_w). That selection is relaxed to a fractional knapsack, which can
only lower the subproblem value, so every dual value is a valid lower bound.
"""

import logging
import math
import time
from bisect import bisect_right
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from bss_planner.exceptions import ConfigurationError
from bss_planner.network.costs import CostTables
from bss_planner.network.types import Instance
from bss_planner.solvers.heuristics import greedy_construct, local_search
from bss_planner.solvers.reports import HeuristicReport, Multipliers
from bss_planner.traffic.capacity import capacity_limit

logger = logging.getLogger(__name__)

STEP_KINDS = ("diminishing", "polyak")


@dataclass(frozen=True)
class StepRule:
    """
    Subgradient step size.

    ``diminishing`` uses mu0 / k. ``polyak`` uses theta * (UB - L) / |g|^2 with
    theta starting at ``theta0`` and halved after ``patience`` iterations
    without a better bound; UB defaults to the greedy objective.
    """

    kind: str = "diminishing"
    mu0: float = 1.0
    theta0: float = 2.0
    patience: int = 10
    upper_bound: Optional[float] = None

    def __post_init__(self):
        if self.kind not in STEP_KINDS:
            raise ConfigurationError(f"Unknown step rule {self.kind!r}; use one of {STEP_KINDS}")
        if not self.mu0 > 0 or not self.theta0 > 0:
            raise ConfigurationError("Step sizes must be positive")
        if self.patience < 1:
            raise ConfigurationError("patience must be >= 1")


@dataclass(frozen=True)
class DualEvaluation:
    """L(lambda), its subgradient and the selected fraction per (BTS, BSC)."""

    value: float
    subgradient: Tuple[float, ...]


class _BscOptions:
    """Distinct (cost, capacity) pairs of one BSC for c >= 1, cheapest first per capacity."""

    def __init__(self, tables: CostTables, j: int):
        pairs = []
        limits = tables.capacity_table.limits
        for c in range(1, len(limits)):
            for model in tables.models:
                cap = min(limits[c], capacity_limit(model.capacity_erl))
                pairs.append((tables.trunk[j][c] + model.acquisition_cost, cap))
        # Drop options dominated by a cheaper one with at least as much capacity.
        pairs.sort(key=lambda p: (p[0], -p[1]))
        kept: List[Tuple[float, float]] = []
        best_cap = -math.inf
        for cost, cap in pairs:
            if cap > best_cap:
                kept.append((cost, cap))
                best_cap = cap
        self.options = kept


def _solve_bsc(
    tables: CostTables,
    j: int,
    options: Sequence[Tuple[float, float]],
    lam: Sequence[float],
    fractions: List[float],
) -> float:
    """Minimize BSC ``j``'s subproblem; adds its selected fractions into ``fractions``."""
    zero_part = 0.0
    zero_items = []
    items = []
    for i in range(tables.n_bts):
        r = tables.link[i][j] - lam[i]
        if r >= 0:
            continue
        a = tables.traffic[i]
        if a <= 0:
            zero_part += r
            zero_items.append(i)
        else:
            items.append((r / a, i, r, a))
    items.sort()

    prefix_a = [0.0]
    prefix_r = [0.0]
    for _, _, r, a in items:
        prefix_a.append(prefix_a[-1] + a)
        prefix_r.append(prefix_r[-1] + r)

    def knapsack(cap: float) -> Tuple[float, int, float]:
        # Whole items 0..k-1 fit; item k contributes a fraction.
        k = bisect_right(prefix_a, cap) - 1
        value = prefix_r[k]
        frac = 0.0
        if k < len(items):
            frac = (cap - prefix_a[k]) / items[k][3]
            value += frac * items[k][2]
        return value, k, frac

    best = zero_part
    best_choice: Optional[Tuple[int, float]] = None
    if items:
        for cost, cap in options:
            value, k, frac = knapsack(cap)
            total = cost + zero_part + value
            if total < best:
                best, best_choice = total, (k, frac)

    for i in zero_items:
        fractions[i] += 1.0
    if best_choice is not None:
        k, frac = best_choice
        for _, i, _, _ in items[:k]:
            fractions[i] += 1.0
        if k < len(items) and frac > 0:
            fractions[items[k][1]] += frac
    return best


def dual_value(
    tables: CostTables,
    multipliers: Sequence[float],
    options: Optional[List[Sequence[Tuple[float, float]]]] = None,
) -> DualEvaluation:
    """Evaluate L(lambda) = sum(lambda) + sum over BSCs of their subproblem minimum."""
    lam = list(multipliers)
    if len(lam) != tables.n_bts:
        raise ConfigurationError(f"Expected {tables.n_bts} multipliers, got {len(lam)}")
    if options is None:
        options = [_BscOptions(tables, j).options for j in range(tables.n_bsc)]
    fractions = [0.0] * tables.n_bts
    value = 0.0
    for v in lam:
        value += v
    for j in range(tables.n_bsc):
        value += _solve_bsc(tables, j, options[j], lam, fractions)
    return DualEvaluation(value=value, subgradient=tuple(1.0 - f for f in fractions))


def lagrangian_lower_bound(
    instance: Instance,
    iterations: int = 200,
    step_rule: Optional[StepRule] = None,
    tables: Optional[CostTables] = None,
    start: Optional[Multipliers] = None,
) -> Tuple[float, Multipliers]:
    """
    Best Lagrangian dual value found by subgradient ascent.

    Args:
        instance: Problem instance
        iterations: Number of subgradient iterations (>= 1)
        step_rule: Step size rule (diminishing mu0/k by default)
        tables: Precomputed CostTables to reuse
        start: Initial multipliers (zeros when omitted)

    Returns:
        (bound, multipliers achieving it); the bound never exceeds the optimum
    """
    bound, multipliers, _ = _subgradient_ascent(instance, iterations, step_rule, tables, start)
    return bound, multipliers


def _subgradient_ascent(
    instance: Instance,
    iterations: int,
    step_rule: Optional[StepRule],
    tables: Optional[CostTables],
    start: Optional[Multipliers] = None,
) -> Tuple[float, Multipliers, int]:
    """Best dual value, its multipliers and the number of iterations actually run."""
    if iterations < 1:
        raise ConfigurationError("iterations must be >= 1")
    rule = step_rule or StepRule()
    tables = tables or CostTables(instance)
    options = [_BscOptions(tables, j).options for j in range(tables.n_bsc)]

    upper = rule.upper_bound
    if rule.kind == "polyak" and upper is None:
        upper = greedy_construct(instance, tables).objective

    lam = list(start.values) if start is not None else [0.0] * tables.n_bts
    best_value = -math.inf
    best_lam = list(lam)
    theta = rule.theta0
    stale = 0

    for k in range(1, iterations + 1):
        evaluation = dual_value(tables, lam, options)
        if evaluation.value > best_value:
            best_value, best_lam, stale = evaluation.value, list(lam), 0
        else:
            stale += 1
        g = evaluation.subgradient
        norm_sq = sum(x * x for x in g)
        if norm_sq == 0:
            logger.debug("Zero subgradient at iteration %d; bound is tight", k)
            break
        if rule.kind == "polyak":
            if stale >= rule.patience:
                theta, stale = theta / 2.0, 0
            step = theta * max(upper - evaluation.value, 0.0) / norm_sq
            if step == 0:
                break
        else:
            step = rule.mu0 / k
        lam = [v + step * x for v, x in zip(lam, g)]

    logger.info("Lagrangian bound %.6f after %d iterations (%s)", best_value, k, rule.kind)
    return best_value, Multipliers(tuple(best_lam)), k


def solve_with_bound(
    instance: Instance,
    iterations: int = 200,
    step_rule: Optional[StepRule] = None,
    max_rounds: int = 50,
) -> HeuristicReport:
    """Greedy plus local search, reported with the Lagrangian bound and its gap."""
    started = time.perf_counter()
    tables = CostTables(instance)
    start = greedy_construct(instance, tables)
    solution = local_search(instance, start, max_rounds=max_rounds, tables=tables)
    rule = step_rule or StepRule()
    if rule.kind == "polyak" and rule.upper_bound is None:
        rule = StepRule(
            kind=rule.kind,
            mu0=rule.mu0,
            theta0=rule.theta0,
            patience=rule.patience,
            upper_bound=solution.objective,
        )
    bound, _, ran = _subgradient_ascent(instance, iterations, rule, tables)
    return HeuristicReport(
        solution=solution,
        lower_bound=min(bound, solution.objective),
        iterations=ran,
        elapsed=time.perf_counter() - started,
    )
