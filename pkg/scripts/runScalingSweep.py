"""Run the scaling sweep and fit an exponential to the average solve times.

Uses the unified BssPlanner interface; every solved instance is stored in
the database named by DB_URL when it is set.
"""

import sys

from bss_planner import BssPlanner


def main():
    """Solve 5..50 BTS instances exactly and report the exponential trend."""
    out = sys.argv[1] if len(sys.argv) > 1 else "bench.csv"
    with BssPlanner() as planner:
        sizes = list(range(5, 55, 5))
        print(f"Running exact sweep over {sizes} ({planner.settings.time_limit:.0f}s limit)...")
        records = planner.bench.run(sizes, reps=20, mode="exact", csv_path=out)

        fit = planner.bench.fit(records)
        print(f"✓ Wrote {len(records)} rows to {out}")
        print(f"✓ Fitted {fit}")


if __name__ == "__main__":
    main()
