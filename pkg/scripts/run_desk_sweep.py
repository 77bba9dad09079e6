#!/usr/bin/env python3
"""Desk-scale sweep over the full experiment grid, with a crossover summary.

Writes results_desk.csv (both reputation systems, the default parameter grid,
21 alpha points, 2^5 runs per point) and prints, per combination, the smallest
alpha at which the ill-informed strategy overtakes the well-informed one.
Takes a couple of minutes; see run_paper_sweep.py for the published scale.
"""

import argparse
import sys
import time
from collections import defaultdict

from argmarket.market import Strategy
from argmarket.reputation import RepSystem
from argmarket.sweep import (
    DEFAULT_ALPHAS,
    DEFAULT_DELTA,
    DEFAULT_DELTA_N_ARG,
    DEFAULT_F_II,
    DESK_SCALE,
    ScenarioParams,
    SweepGrid,
    run_sweep,
    write_csv,
)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=20260811)
    parser.add_argument("--workers", type=int, default=2)
    parser.add_argument("--out", default="results_desk.csv")
    args = parser.parse_args()

    grid = SweepGrid(
        rep_systems=(RepSystem.R1, RepSystem.R2),
        delta_n_arg_values=DEFAULT_DELTA_N_ARG,
        f_ii_values=DEFAULT_F_II,
        delta_values=DEFAULT_DELTA,
        alpha_values=DEFAULT_ALPHAS,
        runs_per_point=DESK_SCALE["runs_per_point"],
        base_seed=args.seed,
        scenario=ScenarioParams(
            n_clients=DESK_SCALE["n_clients"],
            n_consultants=DESK_SCALE["n_consultants"],
            rounds=DESK_SCALE["rounds"],
        ),
    )
    started = time.perf_counter()
    records = run_sweep(grid, workers=args.workers)
    write_csv(records, args.out)
    print(f"wrote {len(records)} records to {args.out} "
          f"in {time.perf_counter() - started:.0f}s", file=sys.stderr)

    by_point = defaultdict(dict)
    for r in records:
        key = (r.rep_system.value, r.delta_n_arg, r.f_ii, r.delta)
        by_point[key].setdefault(r.alpha, {})[r.strategy] = r.mean_profit
    print("crossover: smallest alpha where ii mean profit exceeds wi")
    for key in sorted(by_point):
        crossing = [
            alpha
            for alpha, profits in sorted(by_point[key].items())
            if profits[Strategy.II] > profits[Strategy.WI]
        ]
        rep, dn, f_ii, delta = key
        where = f"alpha={crossing[0]:.2f}" if crossing else "never"
        print(f"  {rep} delta_n_arg={dn} f_ii={f_ii} delta={delta}: {where}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
