#!/usr/bin/env python3
"""Published-scale sweep: 2^8 runs of 2^7 rounds with 2^10 clients and 2^7
consultants per point, over the full grid.  This is hours of compute; use
--rep/--alpha to carve out slices, or run_desk_sweep.py for a quick look."""

import argparse
import sys
import time

from argmarket.reputation import RepSystem
from argmarket.sweep import (
    DEFAULT_ALPHAS,
    DEFAULT_DELTA,
    DEFAULT_DELTA_N_ARG,
    DEFAULT_F_II,
    PAPER_SCALE,
    ScenarioParams,
    SweepGrid,
    run_sweep,
    write_csv,
)

REPS = {"r1": (RepSystem.R1,), "r2": (RepSystem.R2,),
        "both": (RepSystem.R1, RepSystem.R2)}


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=20260811)
    parser.add_argument("--workers", type=int, default=2)
    parser.add_argument("--rep", choices=sorted(REPS), default="both")
    parser.add_argument("--alpha", type=lambda s: tuple(float(v) for v in s.split(",")),
                        default=DEFAULT_ALPHAS, help="comma-separated alphas")
    parser.add_argument("--out", default="results_paper.csv")
    args = parser.parse_args()

    grid = SweepGrid(
        rep_systems=REPS[args.rep],
        delta_n_arg_values=DEFAULT_DELTA_N_ARG,
        f_ii_values=DEFAULT_F_II,
        delta_values=DEFAULT_DELTA,
        alpha_values=args.alpha,
        runs_per_point=PAPER_SCALE["runs_per_point"],
        base_seed=args.seed,
        scenario=ScenarioParams(
            n_clients=PAPER_SCALE["n_clients"],
            n_consultants=PAPER_SCALE["n_consultants"],
            rounds=PAPER_SCALE["rounds"],
        ),
    )
    combos = len(grid.combinations())
    print(f"{combos} combinations x {grid.runs_per_point} runs; this will "
          f"take a while", file=sys.stderr)
    started = time.perf_counter()
    records = run_sweep(grid, workers=args.workers,
                        log=lambda line: print(line, file=sys.stderr))
    write_csv(records, args.out)
    print(f"wrote {len(records)} records to {args.out} "
          f"in {time.perf_counter() - started:.0f}s", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
