"""Solver limits, reports and shared tie-breaking rules."""

import math
from dataclasses import dataclass
from typing import Optional, Tuple

from bss_planner.exceptions import ConfigurationError
from bss_planner.network.types import Solution

TIE_TOL = 1e-9


def is_better(
    objective: float,
    key: Tuple[int, ...],
    best_objective: float,
    best_key: Optional[Tuple[int, ...]],
) -> bool:
    """Lower objective wins; within TIE_TOL the lexicographically smaller assignment wins."""
    if best_key is None or objective < best_objective - TIE_TOL:
        return True
    return abs(objective - best_objective) <= TIE_TOL and key < best_key


def prune_tolerance(best_objective: float) -> float:
    return TIE_TOL * max(1.0, abs(best_objective)) if math.isfinite(best_objective) else 0.0


@dataclass(frozen=True)
class SolveLimits:
    """Optional stopping limits for the exact solver."""

    time_limit: Optional[float] = None
    node_limit: Optional[int] = None

    def __post_init__(self):
        if self.time_limit is not None and not self.time_limit > 0:
            raise ConfigurationError("time_limit must be positive")
        if self.node_limit is not None and self.node_limit < 1:
            raise ConfigurationError("node_limit must be positive")


@dataclass(frozen=True)
class SolveReport:
    """Outcome of an exact or enumerative solve."""

    solution: Solution
    lower_bound: float
    optimal: bool
    nodes_explored: int
    elapsed: float

    @property
    def gap(self) -> float:
        """Relative gap between the incumbent and the bound (0 when proven optimal)."""
        return relative_gap(self.solution.objective, self.lower_bound)


@dataclass(frozen=True)
class Multipliers:
    """One Lagrange multiplier per BTS, in BTS-id order."""

    values: Tuple[float, ...]

    def __post_init__(self):
        if not all(math.isfinite(v) for v in self.values):
            raise ConfigurationError("Lagrange multipliers must be finite")

    @classmethod
    def zeros(cls, n: int) -> "Multipliers":
        return cls(tuple(0.0 for _ in range(n)))


@dataclass(frozen=True)
class HeuristicReport:
    """Outcome of a heuristic run, optionally with a Lagrangian lower bound."""

    solution: Solution
    lower_bound: Optional[float]
    iterations: int
    elapsed: float

    @property
    def gap(self) -> Optional[float]:
        if self.lower_bound is None:
            return None
        return relative_gap(self.solution.objective, self.lower_bound)


def relative_gap(upper: float, lower: float) -> float:
    if upper == lower:
        return 0.0
    return max(0.0, (upper - lower) / max(abs(upper), 1e-12))
