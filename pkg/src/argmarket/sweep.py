"""Parameter-sweep harness: the experiment grid, per-run seed derivation,
profit aggregation, and byte-deterministic CSV output.

Each (rep_system, delta_n_arg, f_ii, delta, alpha) combination is simulated
`runs_per_point` times; every run gets its own seed derived from
``SeedSequence((base_seed, combination_index, run_index))``, so runs are
independent of each other and of how many of them are requested.  The per-run
statistic is the mean final profit of each strategy group; mean and sample
standard deviation are then taken across runs.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product
from pathlib import Path
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .engine import ConfigError, SimConfig, run_simulation
from .market import Strategy
from .reputation import RepSystem

CSV_HEADER = "rep_system,delta_n_arg,f_ii,delta,alpha,strategy,mean_profit,std_profit,n_runs"

#: Desk scale finishes in minutes on a laptop; paper scale reproduces the
#: published grid (2^8 runs, 2^7 rounds, 2^10 clients, 2^7 consultants).
DESK_SCALE = dict(n_clients=2**8, n_consultants=2**5, rounds=2**5, runs_per_point=2**5)
PAPER_SCALE = dict(n_clients=2**10, n_consultants=2**7, rounds=2**7, runs_per_point=2**8)

DEFAULT_DELTA_N_ARG = (2, 3, 4, 5)
DEFAULT_F_II = (0.1, 0.5, 0.9)
DEFAULT_DELTA = (0.1, 0.5)
DEFAULT_ALPHAS = tuple(i / 20 for i in range(21))


@dataclass(frozen=True)
class ScenarioParams:
    """SimConfig template shared by every combination of a sweep."""

    n_clients: int
    n_consultants: int
    rounds: int
    c_arg: float = 1.0
    n_arg_total: Optional[int] = None  # None: sized to fit the largest delta_n_arg


@dataclass(frozen=True)
class SweepGrid:
    rep_systems: tuple[RepSystem, ...]
    delta_n_arg_values: tuple[int, ...]
    f_ii_values: tuple[float, ...]
    delta_values: tuple[float, ...]
    alpha_values: tuple[float, ...]
    runs_per_point: int
    base_seed: int
    scenario: ScenarioParams

    def __post_init__(self):
        for name in ("rep_systems", "delta_n_arg_values", "f_ii_values",
                     "delta_values", "alpha_values"):
            if len(getattr(self, name)) == 0:
                raise ValueError(f"{name} must be non-empty")
        if list(self.alpha_values) != sorted(self.alpha_values):
            raise ValueError("alpha_values must be sorted ascending")
        if self.runs_per_point < 1:
            raise ValueError("runs_per_point must be at least 1")

    def combinations(self) -> list[tuple[RepSystem, int, float, float, float]]:
        return list(
            product(
                self.rep_systems,
                self.delta_n_arg_values,
                self.f_ii_values,
                self.delta_values,
                self.alpha_values,
            )
        )

    def n_arg_total(self) -> int:
        if self.scenario.n_arg_total is not None:
            return self.scenario.n_arg_total
        return 1 + self.scenario.rounds * max(self.delta_n_arg_values)


@dataclass(frozen=True)
class SweepRecord:
    rep_system: RepSystem
    delta_n_arg: int
    f_ii: float
    delta: float
    alpha: float
    strategy: Strategy
    mean_profit: float
    std_profit: float
    n_runs: int


def derive_run_seed(base_seed: int, combination_index: int, run_index: int) -> int:
    """Independent 64-bit seed for one run; a pure function of its coordinates."""
    ss = np.random.SeedSequence((base_seed, combination_index, run_index))
    return int(ss.generate_state(1, np.uint64)[0])


def aggregate(profits_per_run: Sequence[float]) -> tuple[float, float]:
    """Mean and sample standard deviation (divisor n - 1; 0.0 for n = 1)."""
    n = len(profits_per_run)
    if n == 0:
        raise ValueError("cannot aggregate an empty list")
    mean = math.fsum(profits_per_run) / n
    if n == 1:
        return mean, 0.0
    var = math.fsum((v - mean) ** 2 for v in profits_per_run) / (n - 1)
    return mean, math.sqrt(var)


def config_for(
    grid: SweepGrid,
    combo: tuple[RepSystem, int, float, float, float],
    combination_index: int,
    run_index: int,
) -> SimConfig:
    rep, delta_n_arg, f_ii, delta, alpha = combo
    try:
        return SimConfig(
            n_clients=grid.scenario.n_clients,
            n_consultants=grid.scenario.n_consultants,
            rounds=grid.scenario.rounds,
            f_ii=f_ii,
            delta_n_arg=delta_n_arg,
            alpha=alpha,
            delta=delta,
            c_arg=grid.scenario.c_arg,
            rep_system=rep,
            seed=derive_run_seed(grid.base_seed, combination_index, run_index),
            n_arg_total=grid.n_arg_total(),
        )
    except ConfigError as err:
        raise ConfigError(
            err.field,
            f"{err} (combination rep={rep.value} delta_n_arg={delta_n_arg} "
            f"f_ii={f_ii} delta={delta} alpha={alpha})",
        ) from err


def run_combination(
    grid: SweepGrid,
    combo: tuple[RepSystem, int, float, float, float],
    combination_index: int,
) -> list[SweepRecord]:
    """All records (one per non-empty strategy group) for one grid point."""
    rep, delta_n_arg, f_ii, delta, alpha = combo
    group_means: dict[Strategy, list[float]] = {Strategy.WI: [], Strategy.II: []}
    for run_index in range(grid.runs_per_point):
        config = config_for(grid, combo, combination_index, run_index)
        result = run_simulation(config, collect_diagnostics=False)
        for strategy in (Strategy.WI, Strategy.II):
            mean = result.mean_profit(strategy)
            if mean is not None:
                group_means[strategy].append(mean)
    records = []
    for strategy in sorted(group_means, key=lambda s: s.value):
        means = group_means[strategy]
        if not means:
            continue
        mean, std = aggregate(means)
        records.append(
            SweepRecord(rep, delta_n_arg, f_ii, delta, alpha, strategy,
                        mean, std, len(means))
        )
    return records


def _run_combination_task(args) -> tuple[int, list[SweepRecord]]:
    grid, combo, index = args
    return index, run_combination(grid, combo, index)


def run_sweep(
    grid: SweepGrid,
    workers: int = 1,
    log: Optional[Callable[[str], None]] = None,
) -> list[SweepRecord]:
    """Run every combination of the grid and return records in canonical
    order (rep_system, delta_n_arg, f_ii, delta, alpha, strategy); the order
    and content never depend on worker count or completion order."""
    combos = grid.combinations()
    tasks = [(grid, combo, i) for i, combo in enumerate(combos)]
    per_combo: dict[int, list[SweepRecord]] = {}
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for index, records in pool.map(_run_combination_task, tasks):
                per_combo[index] = records
                _log_combination(log, combos[index], index, len(combos))
    else:
        for task in tasks:
            index, records = _run_combination_task(task)
            per_combo[index] = records
            _log_combination(log, combos[index], index, len(combos))
    records = [rec for index in sorted(per_combo) for rec in per_combo[index]]
    records.sort(
        key=lambda r: (r.rep_system.value, r.delta_n_arg, r.f_ii, r.delta,
                       r.alpha, r.strategy.value)
    )
    return records


def _log_combination(log, combo, index, total) -> None:
    if log is None:
        return
    rep, delta_n_arg, f_ii, delta, alpha = combo
    log(
        f"combination {index + 1}/{total}: rep={rep.value} "
        f"delta_n_arg={delta_n_arg} f_ii={f_ii} delta={delta} alpha={alpha}"
    )


def format_records(records: Sequence[SweepRecord]) -> str:
    lines = [CSV_HEADER]
    for r in records:
        lines.append(
            f"{r.rep_system.value},{r.delta_n_arg},{r.f_ii:.6f},{r.delta:.6f},"
            f"{r.alpha:.6f},{r.strategy.value},{r.mean_profit:.6f},"
            f"{r.std_profit:.6f},{r.n_runs}"
        )
    return "\n".join(lines) + "\n"


def write_csv(records: Sequence[SweepRecord], destination: Union[str, Path]) -> None:
    """Write the sweep CSV: fixed header, 6-decimal reals, single newline line
    terminator; output bytes depend only on the records."""
    Path(destination).write_bytes(format_records(records).encode("ascii"))
