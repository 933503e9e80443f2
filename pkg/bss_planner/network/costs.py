"""Cost rules and the per-BSC cheapest completion shared by every solver."""

import math
from bisect import bisect_left
from dataclasses import dataclass
from typing import List, Optional, Tuple

from bss_planner.exceptions import InfeasibleAssignmentError
from bss_planner.network.types import BscCandidate, BtsNode, CostRates, Instance, Site
from bss_planner.traffic.capacity import capacity_limit


def euclidean_distance(a: Site, b: Site) -> float:
    return math.hypot(a.x - b.x, a.y - b.y)


def link_cost(bts: BtsNode, bsc: BscCandidate, rates: CostRates) -> float:
    """
    Abis cost of connecting ``bts`` to ``bsc``: n E1 lines cost n times one line.

    Example:
        >>> link_cost(BtsNode(Site(1, 0, 0), 5.0), BscCandidate(Site(2, 10, 0)),
        ...           CostRates(abis_rate=2.0, a_rate=1.0))
        20.0
    """
    per_line = euclidean_distance(bts.site, bsc.site) * rates.abis_rate + rates.line_fixed_cost
    return per_line * bts.abis_lines


def trunk_cost(bsc: BscCandidate, msc: Site, rates: CostRates, lines: int) -> float:
    """A-interface cost of ``lines`` E1 trunks from ``bsc`` to the MSC; zero for no lines."""
    if lines <= 0:
        return 0.0
    per_line = euclidean_distance(bsc.site, msc) * rates.a_rate + rates.line_fixed_cost
    return per_line * lines


@dataclass(frozen=True)
class Completion:
    """Cheapest (lines, model) covering a BSC's traffic and what it costs."""

    lines: int
    model_index: Optional[int]
    cost: float


NO_COMPLETION = Completion(lines=0, model_index=None, cost=0.0)


class CostTables:
    """
    Precomputed cost data for one instance, indexed by position.

    BTS ``i`` and BSC ``j`` are positions in ``instance.bts`` / ``instance.bsc``
    (both sorted by id). Every solver and :func:`complete_assignment` price
    per-BSC completions through :meth:`completion`, so they agree exactly.
    """

    def __init__(self, instance: Instance):
        self.instance = instance
        self.n_bts = len(instance.bts)
        self.n_bsc = len(instance.bsc)
        self.traffic: List[float] = [b.traffic_erl for b in instance.bts]
        self.link: List[List[float]] = [
            [link_cost(b, c, instance.rates) for c in instance.bsc] for b in instance.bts
        ]
        self.capacity_table = instance.capacity_table
        self.capacities: List[float] = instance.capacity_table.capacities
        self.trunk: List[List[float]] = [
            [trunk_cost(c, instance.msc, instance.rates, k) for k in range(len(self.capacities))]
            for c in instance.bsc
        ]
        self.models = instance.models
        self._model_thresholds, self._model_choice = self._model_regions()
        self.min_link: List[float] = [min(row) for row in self.link]

    def _model_regions(self) -> Tuple[List[float], List[int]]:
        # Region r covers traffic up to limits[r]; its cheapest model is the
        # lowest-cost (then lowest-id) one with capacity >= capacities[r].
        capacities = sorted({m.capacity_erl for m in self.models})
        choice = []
        for cap in capacities:
            feasible = [
                (m.acquisition_cost, m.id, idx)
                for idx, m in enumerate(self.models)
                if m.capacity_erl >= cap
            ]
            choice.append(min(feasible)[2])
        return [capacity_limit(c) for c in capacities], choice

    def completion(self, j: int, traffic: float) -> Optional[Completion]:
        """
        Cheapest completion of BSC ``j`` carrying ``traffic`` Erlangs.

        Returns:
            The Completion, NO_COMPLETION for zero traffic, or None when no
            line count or no model can carry the traffic.
        """
        if traffic <= 0:
            return NO_COMPLETION
        lines = self.capacity_table.lines_for(traffic)
        if lines is None:
            return None
        region = bisect_left(self._model_thresholds, traffic)
        if region >= len(self._model_thresholds):
            return None
        model_index = self._model_choice[region]
        cost = self.trunk[j][lines] + self.models[model_index].acquisition_cost
        return Completion(lines=lines, model_index=model_index, cost=cost)

    def completion_cost(self, j: int, traffic: float) -> float:
        """Cost of :meth:`completion`, ``math.inf`` when the traffic cannot be carried."""
        done = self.completion(j, traffic)
        return math.inf if done is None else done.cost

    def require_completion(self, j: int, traffic: float) -> Completion:
        done = self.completion(j, traffic)
        if done is None:
            bsc_id = self.instance.bsc[j].id
            if self.capacity_table.lines_for(traffic) is None:
                reason = f"above the capacity table maximum {self.capacities[-1]:.3f} Erl"
            else:
                largest = max(m.capacity_erl for m in self.models)
                reason = f"above the largest model ({largest:.3f} Erl)"
            raise InfeasibleAssignmentError(bsc_id, traffic, reason)
        return done

    def opening_cost(self, j: int) -> float:
        """Smallest cost BSC ``j`` incurs once it carries any positive traffic."""
        return self.completion_cost(j, math.ulp(0.0))
