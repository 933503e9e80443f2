"""Scaling benchmark harness and exponential regression of solve times."""

from .fit import ExpFit, fit_bench_csv, fit_exponential
from .scaling import (
    BENCH_MODES,
    CSV_COLUMNS,
    BenchRecord,
    BenchRun,
    aggregate,
    instance_seed,
    run_scaling,
    solve_one,
    write_records,
)

__all__ = [
    "ExpFit",
    "fit_bench_csv",
    "fit_exponential",
    "BENCH_MODES",
    "CSV_COLUMNS",
    "BenchRecord",
    "BenchRun",
    "aggregate",
    "instance_seed",
    "run_scaling",
    "solve_one",
    "write_records",
]
