"""Assignment completion, objective evaluation and feasibility checking."""

import math
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from bss_planner.exceptions import InstanceError
from bss_planner.network.costs import CostTables, link_cost, trunk_cost
from bss_planner.network.types import UNUSED, BscConfig, CostBreakdown, Instance, Solution, Violation
from bss_planner.traffic.capacity import capacity_limit


def bsc_loads(tables: CostTables, choice: Sequence[int]) -> List[float]:
    """Traffic per BSC position; exact sums, so independent of BTS order."""
    members: List[List[float]] = [[] for _ in range(tables.n_bsc)]
    for i, j in enumerate(choice):
        members[j].append(tables.traffic[i])
    return [math.fsum(m) for m in members]


def complete_indexed(
    tables: CostTables, choice: Sequence[int]
) -> Tuple[float, List[Tuple[int, Optional[int]]]]:
    """
    Complete a positional assignment (``choice[i]`` = BSC position of BTS ``i``).

    Returns:
        (objective, per-BSC (lines, model position)) with the objective summed
        exactly as :func:`evaluate` sums it.

    Raises:
        InfeasibleAssignmentError: If some BSC's traffic cannot be carried
    """
    loads = bsc_loads(tables, choice)
    configs: List[Tuple[int, Optional[int]]] = []
    for j, load in enumerate(loads):
        done = tables.require_completion(j, load)
        configs.append((done.lines, done.model_index))

    abis = math.fsum(tables.link[i][j] for i, j in enumerate(choice))
    trunk = math.fsum(tables.trunk[j][lines] for j, (lines, _) in enumerate(configs))
    bsc = math.fsum(
        tables.models[m].acquisition_cost for _, m in configs if m is not None
    )
    return CostBreakdown(abis, trunk, bsc).total, configs


def solution_from_indexed(tables: CostTables, choice: Sequence[int]) -> Solution:
    """Build a Solution from a positional assignment."""
    instance = tables.instance
    objective, configs = complete_indexed(tables, choice)
    assignment = {instance.bts[i].id: instance.bsc[j].id for i, j in enumerate(choice)}
    bsc_config = {
        instance.bsc[j].id: BscConfig(
            lines=lines,
            model=None if model_index is None else tables.models[model_index].id,
        )
        for j, (lines, model_index) in enumerate(configs)
    }
    return Solution.build(assignment, bsc_config, objective)


def indexed_choice(instance: Instance, assignment: Mapping[int, int]) -> List[int]:
    """Translate a BTS id -> BSC id map into positions, checking it is total."""
    bsc_pos = {b.id: j for j, b in enumerate(instance.bsc)}
    missing = [b.id for b in instance.bts if b.id not in assignment]
    if missing:
        raise InstanceError(f"Assignment misses BTS {missing}")
    extra = set(assignment) - set(instance.bts_by_id)
    if extra:
        raise InstanceError(f"Assignment names unknown BTS {sorted(extra)}")
    choice = []
    for node in instance.bts:
        bsc_id = assignment[node.id]
        if bsc_id not in bsc_pos:
            raise InstanceError(f"BTS {node.id} is assigned to unknown BSC {bsc_id}")
        choice.append(bsc_pos[bsc_id])
    return choice


def complete_assignment(
    instance: Instance,
    assignment: Mapping[int, int],
    tables: Optional[CostTables] = None,
) -> Solution:
    """
    Optimal lines and models for a fixed BTS-to-BSC assignment.

    For fixed x the problem splits per BSC: the fewest E1 lines whose capacity
    covers the BSC's traffic, and the cheapest model (lowest id on ties) whose
    capacity does. BSCs without traffic get no lines and no model.

    Args:
        instance: Problem instance
        assignment: BTS id -> BSC id, covering every BTS exactly once
        tables: Precomputed CostTables to reuse (built if omitted)

    Returns:
        Completed Solution with its objective

    Raises:
        InstanceError: If the assignment is not total or names unknown ids
        InfeasibleAssignmentError: If a BSC's traffic exceeds the table or every model
    """
    tables = tables or CostTables(instance)
    return solution_from_indexed(tables, indexed_choice(instance, assignment))


def evaluate(instance: Instance, solution: Solution) -> CostBreakdown:
    """
    Recompute the three objective terms of ``solution`` from scratch.

    Pairs or configs naming unknown ids contribute nothing; they are reported
    by :func:`check_feasibility` instead. Each term is an exact sum, so the
    result does not depend on the order of pairs or configs.
    """
    links = []
    for bts_id, bsc_id in solution.assignment:
        bts = instance.bts_by_id.get(bts_id)
        bsc = instance.bsc_by_id.get(bsc_id)
        if bts is not None and bsc is not None:
            links.append(link_cost(bts, bsc, instance.rates))
    trunks = []
    models = []
    for bsc_id, cfg in solution.bsc_config:
        bsc = instance.bsc_by_id.get(bsc_id)
        if bsc is None:
            continue
        trunks.append(trunk_cost(bsc, instance.msc, instance.rates, cfg.lines))
        model = instance.model_by_id.get(cfg.model) if cfg.model is not None else None
        if model is not None:
            models.append(model.acquisition_cost)
    return CostBreakdown(math.fsum(links), math.fsum(trunks), math.fsum(models))


def check_feasibility(instance: Instance, solution: Solution) -> List[Violation]:
    """
    List every constraint ``solution`` breaks; an empty list means feasible.

    Checks that each BTS is assigned to exactly one known BSC, that each BSC's
    traffic fits both its E1 line capacity and its model capacity, and that
    unused BSCs carry neither lines nor a model.
    """
    violations: List[Violation] = []
    table = instance.capacity_table

    counts: Dict[int, int] = {}
    loads: Dict[int, List[float]] = {}
    users: Dict[int, int] = {}
    for bts_id, bsc_id in solution.assignment:
        counts[bts_id] = counts.get(bts_id, 0) + 1
        if bts_id not in instance.bts_by_id:
            violations.append(Violation("unknown-id", f"BTS {bts_id}", "not in the instance"))
            continue
        if bsc_id not in instance.bsc_by_id:
            violations.append(
                Violation("unknown-id", f"BTS {bts_id}", f"assigned to unknown BSC {bsc_id}")
            )
            continue
        loads.setdefault(bsc_id, []).append(instance.bts_by_id[bts_id].traffic_erl)
        users[bsc_id] = users.get(bsc_id, 0) + 1

    for node in instance.bts:
        seen = counts.get(node.id, 0)
        if seen != 1:
            violations.append(
                Violation(
                    "assignment",
                    f"BTS {node.id}",
                    f"connected to {seen} BSCs; exactly one is required",
                )
            )

    configs = solution.config_map
    for bsc_id in configs:
        if bsc_id not in instance.bsc_by_id:
            violations.append(Violation("unknown-id", f"BSC {bsc_id}", "not in the instance"))

    for bsc in instance.bsc:
        cfg = configs.get(bsc.id, UNUSED)
        load = math.fsum(loads.get(bsc.id, ()))
        subject = f"BSC {bsc.id}"
        if not 0 <= cfg.lines < len(table):
            violations.append(
                Violation("line-capacity", subject, f"{cfg.lines} lines is outside the table")
            )
            line_capacity = 0.0
        else:
            line_capacity = table[cfg.lines].capacity_erl
        if load > capacity_limit(line_capacity):
            violations.append(
                Violation(
                    "line-capacity",
                    subject,
                    f"traffic {load:.6f} Erl exceeds {cfg.lines} E1 lines "
                    f"({line_capacity:.6f} Erl)",
                )
            )
        model_capacity = 0.0
        if cfg.model is not None:
            model = instance.model_by_id.get(cfg.model)
            if model is None:
                violations.append(
                    Violation("unknown-id", subject, f"unknown BSC model {cfg.model!r}")
                )
            else:
                model_capacity = model.capacity_erl
        if load > capacity_limit(model_capacity):
            violations.append(
                Violation(
                    "model-capacity",
                    subject,
                    f"traffic {load:.6f} Erl exceeds model {cfg.model or 'none'} "
                    f"({model_capacity:.6f} Erl)",
                )
            )
        if users.get(bsc.id, 0) == 0 and (cfg.lines != 0 or cfg.model is not None):
            violations.append(
                Violation("unused-bsc", subject, "no BTS assigned but lines or a model selected")
            )
    return violations
