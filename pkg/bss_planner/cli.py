"""Command-line surface of the BSS planner.

Exit codes: 0 success, 1 usage error, 2 invalid input, 3 infeasible (or a
solution with violations), 4 limit reached without proof of optimality.
"""

import argparse
import logging
import sys
from typing import List, Optional, Sequence

from bss_planner.bench.fit import fit_exponential
from bss_planner.bench.scaling import BENCH_MODES
from bss_planner.exceptions import (
    InfeasibleAssignmentError,
    InfeasibleInstanceError,
    PlannerError,
)
from bss_planner.network.evaluation import check_feasibility, evaluate
from bss_planner.network.formulation import build_formulation, formulation_stats, write_lp
from bss_planner.planner import BssPlanner
from bss_planner.schemas import dumps, instance_to_dict, read_instance, read_solution, write_solution
from persistence.storage import CompositeStorage, CSVStorage
from utils.logging_setup import configure_logging
from utils.settings import Settings

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVALID = 2
EXIT_INFEASIBLE = 3
EXIT_LIMIT = 4

SOLVE_MODES = ("exact", "greedy", "local", "lagrange")


class UsageError(Exception):
    pass


class PlannerArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that exits with the usage code instead of 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _positive_int(raw: str) -> int:
    try:
        value = int(raw)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {raw!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _positive_float(raw: str) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {raw!r}")
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be > 0, got {value}")
    return value


def _sizes(raw: str) -> List[int]:
    """``5,10,20`` or an inclusive range ``start:stop:step`` such as ``5:50:5``."""
    try:
        if ":" in raw:
            parts = [int(p) for p in raw.split(":")]
            if len(parts) != 3 or parts[2] < 1:
                raise ValueError
            start, stop, step = parts
            sizes = list(range(start, stop + 1, step))
        else:
            sizes = [int(p) for p in raw.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad size list {raw!r}; use 5,10,15 or 5:50:5")
    if not sizes or min(sizes) < 1:
        raise argparse.ArgumentTypeError("sizes must be a non-empty list of integers >= 1")
    return sizes


def _point(raw: str):
    try:
        x, y = raw.split(",")
        return float(x), float(y)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad point {raw!r}; use x,y")


def build_parser() -> argparse.ArgumentParser:
    parser = PlannerArgumentParser(
        prog="bss-planner",
        description="Design GSM base station subsystems: BSC placement, sizing and benchmarks.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    parser.add_argument("--log-level", help="root log level (default from BSS_LOG_LEVEL)")
    sub = parser.add_subparsers(
        dest="command", metavar="COMMAND", parser_class=PlannerArgumentParser
    )
    sub.required = True

    gen = sub.add_parser("generate", help="generate a seeded random instance")
    gen.add_argument("--bts", type=_positive_int, required=True, help="number of BTS sites")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--extra-candidates", type=int, default=0, help="extra BSC candidate sites")
    gen.add_argument("--area", type=_positive_float, help="side of the square area in km")
    gen.add_argument("--traffic-max", type=_positive_float, help="upper bound of BTS traffic")
    gen.add_argument("-o", "--output", help="instance file (stdout when omitted)")

    solve = sub.add_parser("solve", help="solve an instance")
    solve.add_argument("instance")
    solve.add_argument("--mode", choices=SOLVE_MODES, default="exact")
    solve.add_argument("--time-limit", type=_positive_float)
    solve.add_argument("--node-limit", type=_positive_int)
    solve.add_argument("--iterations", type=_positive_int, help="subgradient iterations")
    solve.add_argument("--step", choices=("diminishing", "polyak"), default="diminishing")
    solve.add_argument("-o", "--output", help="solution file")

    ev = sub.add_parser("evaluate", help="recompute costs and check a solution")
    ev.add_argument("instance")
    ev.add_argument("solution")

    bench = sub.add_parser("bench", help="scaling benchmark")
    bench.add_argument("--sizes", type=_sizes, default=_sizes("5:50:5"))
    bench.add_argument("--reps", type=_positive_int, default=20)
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--mode", choices=BENCH_MODES, default="exact")
    bench.add_argument("--time-limit", type=_positive_float)
    bench.add_argument("-o", "--output", default="bench.csv", help="CSV of per-size rows")
    bench.add_argument("--runs-dir", help="also store every instance run as CSV here")
    bench.add_argument("--no-progress", action="store_true")

    fit = sub.add_parser("fit", help="fit y = a*exp(b*x) to bench times")
    fit.add_argument("csv", nargs="?", help="bench CSV (bts vs avg_time_s)")
    fit.add_argument("--point", type=_point, action="append", help="x,y pair; repeatable")

    cap = sub.add_parser("capacity", help="print the E1 capacity table")
    cap.add_argument("--max-lines", type=int)
    cap.add_argument("--gos", type=float)

    lp = sub.add_parser("export-lp", help="write the integer program in LP format")
    lp.add_argument("instance")
    lp.add_argument("-o", "--output", required=True)
    return parser


def cmd_generate(args, planner: BssPlanner) -> int:
    overrides = {"extra_candidates": args.extra_candidates}
    if args.area is not None:
        overrides["area_km"] = args.area
    if args.traffic_max is not None:
        overrides["traffic_max_erl"] = args.traffic_max
    instance = planner.instances.generate(args.bts, args.seed, **overrides)
    text = dumps(instance_to_dict(instance))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as f:
            f.write(text)
        print(f"Wrote instance with {len(instance.bts)} BTS to {args.output}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_solve(args, planner: BssPlanner) -> int:
    instance = read_instance(args.instance)
    report = {"mode": args.mode}
    code = EXIT_OK

    if args.mode == "exact":
        result = planner.solvers.exact(instance, args.time_limit, args.node_limit)
        solution = result.solution
        report.update(
            lower_bound=result.lower_bound,
            optimal=result.optimal,
            nodes_explored=result.nodes_explored,
            gap=result.gap,
            elapsed=result.elapsed,
        )
        if not result.optimal:
            code = EXIT_LIMIT
    elif args.mode == "lagrange":
        result = planner.solvers.lagrange(instance, args.step, args.iterations)
        solution = result.solution
        report.update(
            lower_bound=result.lower_bound,
            iterations=result.iterations,
            gap=result.gap,
            elapsed=result.elapsed,
        )
    elif args.mode == "local":
        solution = planner.solvers.local(instance)
    else:
        solution = planner.solvers.greedy(instance)

    breakdown = evaluate(instance, solution)
    if args.output:
        write_solution(solution, args.output, breakdown, report)

    print(f"objective: {solution.objective:.6f}")
    print(
        f"  abis: {breakdown.abis_cost:.6f}  trunks: {breakdown.trunk_cost:.6f}  "
        f"bsc: {breakdown.bsc_cost:.6f}"
    )
    if "lower_bound" in report:
        print(f"lower bound: {report['lower_bound']:.6f}")
        print(f"gap: {report['gap']:.6%}")
    if "optimal" in report:
        print(f"optimal: {'yes' if report['optimal'] else 'no (limit reached)'}")
    print(f"opened BSCs: {', '.join(str(j) for j in solution.opened_bscs()) or 'none'}")
    return code


def cmd_evaluate(args, planner: BssPlanner) -> int:
    instance = read_instance(args.instance)
    solution = read_solution(args.solution)
    breakdown = evaluate(instance, solution)
    violations = check_feasibility(instance, solution)
    print(f"abis cost:  {breakdown.abis_cost:.6f}")
    print(f"trunk cost: {breakdown.trunk_cost:.6f}")
    print(f"bsc cost:   {breakdown.bsc_cost:.6f}")
    print(f"total:      {breakdown.total:.6f}")
    if abs(breakdown.total - solution.objective) > 1e-6 * max(1.0, abs(breakdown.total)):
        print(f"note: file states objective {solution.objective:.6f}")
    if violations:
        print(f"{len(violations)} violation(s):")
        for v in violations:
            print(f"  {v}")
        return EXIT_INFEASIBLE
    print("feasible: no violations")
    return EXIT_OK


def cmd_bench(args, planner: BssPlanner) -> int:
    if args.runs_dir:
        runs = CSVStorage(args.runs_dir)
        if planner.storage is None:
            planner.storage = runs
        else:
            planner.storage = CompositeStorage([planner.storage, runs])
    records = planner.bench.run(
        args.sizes,
        reps=args.reps,
        seed=args.seed,
        mode=args.mode,
        time_limit=args.time_limit,
        csv_path=args.output,
        progress=not args.no_progress,
    )
    for r in records:
        print(
            f"{r.n_bts:>4} BTS  vars {r.variables:>6}  const {r.constraints:>4}  "
            f"avg {r.avg_time:.4f}s  std {r.std_dev_time:.4f}s  gap {r.avg_gap:.4%}"
        )
    print(f"Wrote {len(records)} row(s) to {args.output}")
    return EXIT_OK


def cmd_fit(args, planner: BssPlanner) -> int:
    if args.point:
        result = fit_exponential(args.point)
    elif args.csv:
        result = planner.bench.fit_csv(args.csv)
    else:
        raise UsageError("fit needs a CSV file or --point values")
    print(result)
    print(f"a = {result.coef_a:.6f}")
    print(f"b = {result.coef_b:.6f}")
    return EXIT_OK


def cmd_capacity(args, planner: BssPlanner) -> int:
    table = planner.traffic.capacity_table(args.max_lines, args.gos)
    print(f"GoS {table.gos.value}")
    print(f"{'lines':>5} {'channels':>8} {'erlang':>12}")
    for entry in table.entries:
        print(f"{entry.lines:>5} {entry.channels:>8} {entry.capacity_erl:>12.4f}")
    return EXIT_OK


def cmd_export_lp(args, planner: BssPlanner) -> int:
    instance = read_instance(args.instance)
    write_lp(build_formulation(instance), args.output)
    stats = formulation_stats(instance)
    print(
        f"Wrote {args.output}: {stats.variables} variables, {stats.constraints} rows "
        f"({stats.core_constraints} assignment/capacity), density {stats.density:.4f}"
    )
    return EXIT_OK


COMMANDS = {
    "generate": cmd_generate,
    "solve": cmd_solve,
    "evaluate": cmd_evaluate,
    "bench": cmd_bench,
    "fit": cmd_fit,
    "capacity": cmd_capacity,
    "export-lp": cmd_export_lp,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Entry point; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    try:
        settings = Settings.from_env()
        configure_logging(args.log_level or settings.log_level, args.verbose)
        with BssPlanner(settings) as planner:
            return COMMANDS[args.command](args, planner)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (InfeasibleInstanceError, InfeasibleAssignmentError) as e:
        print(f"infeasible: {e}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except PlannerError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
