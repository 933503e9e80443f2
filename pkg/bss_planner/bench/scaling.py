"""Scaling benchmark: solve seeded instances per size and aggregate wall times."""

import logging
import math
import os
import time
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import TYPE_CHECKING, Iterable, List, Optional, Union

import pandas as pd
from tqdm import tqdm

from bss_planner.exceptions import ConfigurationError
from bss_planner.instances.generator import GenParams, generate
from bss_planner.network.costs import CostTables
from bss_planner.network.formulation import formulation_stats
from bss_planner.network.types import Instance
from bss_planner.solvers.exact import root_lower_bound, solve_exact
from bss_planner.solvers.heuristics import greedy_construct, local_search
from bss_planner.solvers.lagrangian import StepRule, solve_with_bound
from bss_planner.solvers.reports import SolveLimits, relative_gap

if TYPE_CHECKING:
    from persistence.storage import StorageAdapter
    from utils.settings import Settings

logger = logging.getLogger(__name__)

BENCH_MODES = ("exact", "greedy", "local", "lagrange")
CSV_COLUMNS = [
    "bts",
    "variables",
    "constraints",
    "density",
    "avg_time_s",
    "std_dev_s",
    "avg_gap",
]
SEED_STRIDE = 1000


@dataclass(frozen=True)
class BenchRun:
    """One solved benchmark instance."""

    mode: str
    n_bts: int
    seed: int
    objective: float
    lower_bound: float
    optimal: bool
    censored: bool
    nodes: int
    elapsed: float

    @property
    def gap(self) -> float:
        return relative_gap(self.objective, self.lower_bound)


@dataclass(frozen=True)
class BenchRecord:
    """Aggregate row for one instance size."""

    n_bts: int
    variables: int
    constraints: int
    density: float
    avg_time: float
    std_dev_time: float
    avg_gap: float

    def as_row(self) -> dict:
        return {
            "bts": self.n_bts,
            "variables": self.variables,
            "constraints": self.constraints,
            "density": self.density,
            "avg_time_s": self.avg_time,
            "std_dev_s": self.std_dev_time,
            "avg_gap": self.avg_gap,
        }


def instance_seed(base: int, n_bts: int, rep: int) -> int:
    """Seed of repetition ``rep`` at size ``n_bts``; distinct across sizes for reps < 1000."""
    return base + SEED_STRIDE * n_bts + rep


def solve_one(
    instance: Instance,
    mode: str,
    seed: int,
    time_limit: Optional[float] = None,
    settings: Optional["Settings"] = None,
) -> BenchRun:
    """Solve one instance in ``mode`` and time it."""
    n_bts = len(instance.bts)
    rounds = settings.local_search_rounds if settings else 50
    started = time.perf_counter()
    if mode == "exact":
        report = solve_exact(instance, SolveLimits(time_limit=time_limit))
        elapsed = time.perf_counter() - started
        return BenchRun(
            mode=mode,
            n_bts=n_bts,
            seed=seed,
            objective=report.solution.objective,
            lower_bound=report.lower_bound,
            optimal=report.optimal,
            censored=not report.optimal,
            nodes=report.nodes_explored,
            elapsed=elapsed,
        )
    if mode == "lagrange":
        rule = StepRule(mu0=settings.lagrange_mu0) if settings else StepRule()
        iterations = settings.lagrange_iterations if settings else 200
        result = solve_with_bound(instance, iterations, rule, rounds)
        objective, bound = result.solution.objective, result.lower_bound
    else:
        tables = CostTables(instance)
        solution = greedy_construct(instance, tables)
        if mode == "local":
            solution = local_search(instance, solution, rounds, tables)
        objective, bound = solution.objective, root_lower_bound(instance, tables)
    elapsed = time.perf_counter() - started
    return BenchRun(
        mode=mode,
        n_bts=n_bts,
        seed=seed,
        objective=objective,
        lower_bound=bound,
        optimal=False,
        censored=False,
        nodes=0,
        elapsed=elapsed,
    )


def aggregate(runs: List[BenchRun], instance: Instance) -> BenchRecord:
    """Table row for the runs of one size; std dev is the population one."""
    stats = formulation_stats(instance)
    frame = pd.DataFrame([asdict(r) for r in runs])
    gaps = pd.Series([r.gap for r in runs], dtype=float)
    std = float(frame["elapsed"].std(ddof=0))
    return BenchRecord(
        n_bts=len(instance.bts),
        variables=stats.variables,
        constraints=stats.core_constraints,
        density=stats.density,
        avg_time=float(frame["elapsed"].mean()),
        std_dev_time=0.0 if math.isnan(std) else std,
        avg_gap=float(gaps.mean()),
    )


def write_records(records: Iterable[BenchRecord], path: Union[str, Path], append: bool = False):
    """Write records with the fixed CSV header; ``append`` adds rows without a header."""
    path = Path(path)
    frame = pd.DataFrame([r.as_row() for r in records], columns=CSV_COLUMNS)
    write_header = not append or not path.exists() or os.path.getsize(path) == 0
    frame.to_csv(path, mode="a" if append else "w", header=write_header, index=False)
    return path


def run_scaling(
    sizes: Iterable[int],
    reps: int = 20,
    seed: int = 0,
    mode: str = "exact",
    time_limit: Optional[float] = 300.0,
    csv_path: Optional[Union[str, Path]] = None,
    storage: Optional["StorageAdapter"] = None,
    settings: Optional["Settings"] = None,
    progress: bool = True,
) -> List[BenchRecord]:
    """
    Generate ``reps`` seeded instances per size, solve each and aggregate.

    Rows are appended to ``csv_path`` as each size finishes, in size order.
    Exact solves that hit ``time_limit`` are kept as censored runs with
    their incumbent and bound rather than aborting the sweep.

    Args:
        sizes: BTS counts to run
        reps: Instances per size (>= 1)
        seed: Base seed; instance seeds are seed + 1000 * size + rep
        mode: One of exact, greedy, local, lagrange
        time_limit: Per-instance limit for exact mode
        csv_path: Optional CSV output, created with the header
        storage: Optional StorageAdapter receiving every BenchRun
        settings: Optional Settings for generation and heuristic parameters
        progress: Show a tqdm bar

    Returns:
        One BenchRecord per size, in the given order
    """
    sizes = list(sizes)
    if reps < 1:
        raise ConfigurationError("reps must be >= 1")
    if mode not in BENCH_MODES:
        raise ConfigurationError(f"Unknown bench mode {mode!r}; use one of {BENCH_MODES}")
    if any(n < 1 for n in sizes):
        raise ConfigurationError("sizes must be >= 1")

    if csv_path is not None:
        write_records([], csv_path)

    records: List[BenchRecord] = []
    with tqdm(total=len(sizes) * reps, desc=f"Bench ({mode})", disable=not progress) as pbar:
        for n in sizes:
            runs: List[BenchRun] = []
            first: Optional[Instance] = None
            for rep in range(reps):
                s = instance_seed(seed, n, rep)
                if settings is not None:
                    params = GenParams.from_settings(settings, n_bts=n, seed=s)
                else:
                    params = GenParams(n_bts=n, seed=s)
                instance = generate(params)
                if first is None:
                    first = instance
                run = solve_one(instance, mode, s, time_limit, settings)
                if run.censored:
                    logger.warning("Instance n=%d seed=%d hit the time limit", n, s)
                runs.append(run)
                if storage is not None:
                    storage.store_run(run)
                pbar.update(1)
            assert first is not None
            record = aggregate(runs, first)
            records.append(record)
            logger.info(
                "Size %d: avg %.4fs std %.4fs gap %.4f",
                n,
                record.avg_time,
                record.std_dev_time,
                record.avg_gap,
            )
            if csv_path is not None:
                write_records([record], csv_path, append=True)
    return records
