"""Unified BSS planner facade - groups the library behind settings-aware namespaces."""

import logging
from pathlib import Path
from typing import Iterable, List, Optional, Union

from bss_planner.bench.fit import ExpFit, fit_bench_csv, fit_exponential
from bss_planner.bench.scaling import BenchRecord, run_scaling
from bss_planner.instances.generator import GenParams, generate
from bss_planner.network.types import Instance, Solution
from bss_planner.solvers.bruteforce import solve_bruteforce
from bss_planner.solvers.exact import solve_exact
from bss_planner.solvers.heuristics import greedy_construct, local_search
from bss_planner.solvers.lagrangian import StepRule, solve_with_bound
from bss_planner.solvers.reports import HeuristicReport, SolveLimits, SolveReport
from bss_planner.traffic.capacity import CapacityTable, TimeslotSchedule, build_capacity_table
from persistence.storage import ORMStorage, StorageAdapter
from utils.settings import Settings

logger = logging.getLogger(__name__)


class TrafficNamespace:
    """Capacity-table helpers bound to the configured schedule and GoS."""

    def __init__(self, settings: Settings):
        self.settings = settings

    def capacity_table(
        self, max_lines: Optional[int] = None, gos: Optional[float] = None
    ) -> CapacityTable:
        s = self.settings
        lines = s.max_lines if max_lines is None else max_lines
        schedule = TimeslotSchedule.default(
            lines, s.first_line_voice_ts, s.other_line_voice_ts, s.sub_timeslots
        )
        return build_capacity_table(lines, schedule, s.gos if gos is None else gos)


class InstanceNamespace:
    """Seeded instance generation with configured defaults."""

    def __init__(self, settings: Settings):
        self.settings = settings

    def generate(self, n_bts: int, seed: int = 0, **overrides) -> Instance:
        return generate(GenParams.from_settings(self.settings, n_bts, seed, **overrides))


class SolverNamespace:
    """Exact, enumerative and heuristic solvers with configured limits."""

    def __init__(self, settings: Settings):
        self.settings = settings

    def exact(
        self,
        instance: Instance,
        time_limit: Optional[float] = None,
        node_limit: Optional[int] = None,
    ) -> SolveReport:
        limit = self.settings.time_limit if time_limit is None else time_limit
        return solve_exact(instance, SolveLimits(time_limit=limit, node_limit=node_limit))

    def bruteforce(self, instance: Instance) -> SolveReport:
        return solve_bruteforce(instance, self.settings.enum_cap)

    def greedy(self, instance: Instance) -> Solution:
        return greedy_construct(instance)

    def local(self, instance: Instance, start: Optional[Solution] = None) -> Solution:
        start = start or greedy_construct(instance)
        return local_search(instance, start, self.settings.local_search_rounds)

    def step_rule(self, kind: str = "diminishing") -> StepRule:
        return StepRule(kind=kind, mu0=self.settings.lagrange_mu0)

    def lagrange(
        self, instance: Instance, kind: str = "diminishing", iterations: Optional[int] = None
    ) -> HeuristicReport:
        return solve_with_bound(
            instance,
            self.settings.lagrange_iterations if iterations is None else iterations,
            self.step_rule(kind),
            self.settings.local_search_rounds,
        )


class BenchNamespace:
    """Scaling sweeps; every solved instance goes to the planner's storage."""

    def __init__(self, settings: Settings, planner: "BssPlanner"):
        self.settings = settings
        self._planner = planner

    def run(
        self,
        sizes: Iterable[int],
        reps: int = 20,
        seed: int = 0,
        mode: str = "exact",
        time_limit: Optional[float] = None,
        csv_path: Optional[Union[str, Path]] = None,
        progress: bool = True,
    ) -> List[BenchRecord]:
        return run_scaling(
            sizes,
            reps=reps,
            seed=seed,
            mode=mode,
            time_limit=self.settings.time_limit if time_limit is None else time_limit,
            csv_path=csv_path,
            storage=self._planner.storage,
            settings=self.settings,
            progress=progress,
        )

    def fit(self, records: Iterable[BenchRecord]) -> ExpFit:
        return fit_exponential([(r.n_bts, r.avg_time) for r in records])

    def fit_csv(self, path: Union[str, Path]) -> ExpFit:
        return fit_bench_csv(path)


class BssPlanner:
    """
    Unified BSS planner.

    Works as a context manager that owns the optional benchmark storage and
    closes it on exit. When no adapter is passed and ``DB_URL`` is set, runs
    are stored through :class:`ORMStorage`.

    Example:
        ```python
        with BssPlanner() as planner:
            instance = planner.instances.generate(10, seed=42)
            report = planner.solvers.exact(instance)
            print(report.solution.objective, report.optimal)
        ```
    """

    def __init__(
        self,
        settings: Optional[Settings] = None,
        storage: Optional[StorageAdapter] = None,
    ):
        self.settings = settings or Settings.from_env()
        self.storage = storage
        self._owns_storage = False

        self.traffic = TrafficNamespace(self.settings)
        self.instances = InstanceNamespace(self.settings)
        self.solvers = SolverNamespace(self.settings)
        self.bench = BenchNamespace(self.settings, self)

    def __enter__(self):
        if self.storage is None and self.settings.db_url:
            self.storage = ORMStorage(self.settings.db_url)
            self._owns_storage = True
            logger.info("Storing benchmark runs in the configured database")
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        if self.storage is not None:
            self.storage.close()
        if self._owns_storage:
            self.storage = None
            self._owns_storage = False
        return False


__all__ = ["BssPlanner"]
