"""Command-line entry point: single runs, full sweeps, framework inspection.

Configuration may come from a flat ``key = value`` file (``--config``, ``#``
comments) with command-line flags taking precedence; unknown file keys are
fatal.  Exit codes: 0 success, 2 usage or config error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from .argumentation import (
    ApxParseError,
    ArgumentationFramework,
    Labeling,
    MAX_ENUMERATION_ARGS,
    chain_framework,
    complete_labelings,
    grounded_labeling,
    parse_apx,
)
from .engine import ConfigError, SimConfig, run_simulation
from .market import Strategy
from .reputation import RepSystem
from .sweep import (
    DEFAULT_ALPHAS,
    DEFAULT_DELTA,
    DEFAULT_DELTA_N_ARG,
    DEFAULT_F_II,
    DESK_SCALE,
    PAPER_SCALE,
    ScenarioParams,
    SweepGrid,
    run_sweep,
    write_csv,
)

_REP_CHOICES = {"r1": (RepSystem.R1,), "r2": (RepSystem.R2,),
                "both": (RepSystem.R1, RepSystem.R2)}


def _int_list(text: str) -> tuple[int, ...]:
    return tuple(int(v) for v in text.split(","))


def _float_list(text: str) -> tuple[float, ...]:
    return tuple(float(v) for v in text.split(","))


_SIMULATE_KEYS = {
    "clients": int, "consultants": int, "rounds": int, "f_ii": float,
    "alpha": float, "delta": float, "delta_n_arg": int, "c_arg": float,
    "rep": str, "seed": int, "n_arg_total": int,
}
_SWEEP_KEYS = {
    "profile": str, "rep": str, "delta_n_arg": _int_list, "f_ii": _float_list,
    "delta": _float_list, "alpha": _float_list, "runs": int, "seed": int,
    "clients": int, "consultants": int, "rounds": int, "c_arg": float,
    "n_arg_total": int, "workers": int,
}


def load_config_file(path: str, known: dict) -> dict:
    """Parse a flat key = value config file; unknown keys are fatal."""
    values = {}
    text = Path(path).read_text()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError("config", f"{path}:{line_no}: expected key = value")
        key, _, value = line.partition("=")
        key = key.strip().replace("-", "_")
        value = value.strip()
        if key not in known:
            raise ConfigError("config", f"{path}:{line_no}: unknown key '{key}'")
        try:
            values[key] = known[key](value)
        except ValueError as err:
            raise ConfigError("config", f"{path}:{line_no}: bad value for '{key}': {err}")
    return values


def _resolve(args: argparse.Namespace, known: dict) -> dict:
    """Merge config-file values and flags; flags win, file fills the gaps."""
    file_values = load_config_file(args.config, known) if args.config else {}
    resolved = dict(file_values)
    for key in known:
        flag_value = getattr(args, key, None)
        if flag_value is not None:
            resolved[key] = flag_value
    return resolved


def _parse_rep(value: str) -> tuple[RepSystem, ...]:
    try:
        return _REP_CHOICES[value.lower()]
    except KeyError:
        raise ConfigError("rep", f"must be one of r1, r2, both (got '{value}')")


def cmd_simulate(args: argparse.Namespace) -> int:
    v = _resolve(args, _SIMULATE_KEYS)
    rep = _parse_rep(v.get("rep", "r1"))
    if len(rep) != 1:
        raise ConfigError("rep", "simulate needs exactly one reputation system")
    rounds = v.get("rounds", 32)
    delta_n_arg = v.get("delta_n_arg", 2)
    config = SimConfig(
        n_clients=v.get("clients", 256),
        n_consultants=v.get("consultants", 32),
        rounds=rounds,
        f_ii=v.get("f_ii", 0.5),
        delta_n_arg=delta_n_arg,
        alpha=v.get("alpha", 0.5),
        delta=v.get("delta", 0.5),
        c_arg=v.get("c_arg", 1.0),
        rep_system=rep[0],
        seed=v.get("seed", 0),
        n_arg_total=v.get("n_arg_total", 1 + rounds * delta_n_arg),
    )
    print(
        "config: "
        f"clients={config.n_clients} consultants={config.n_consultants} "
        f"rounds={config.rounds} f_ii={config.f_ii} "
        f"delta_n_arg={config.delta_n_arg} alpha={config.alpha} "
        f"delta={config.delta} c_arg={config.c_arg} "
        f"rep={config.rep_system.value} n_arg_total={config.n_arg_total} "
        f"seed={config.seed}"
    )
    result = run_simulation(config)
    for strategy in (Strategy.WI, Strategy.II):
        mean = result.mean_profit(strategy)
        count = sum(1 for s in result.strategies if s is strategy)
        if mean is None:
            print(f"{strategy.value} mean_profit=n/a consultants=0")
        else:
            print(f"{strategy.value} mean_profit={mean:.6f} consultants={count}")
    if args.diagnostics_out:
        _write_diagnostics(result, args.diagnostics_out)
    return 0


def _write_diagnostics(result, destination: str) -> None:
    lines = ["round,state_of_art,mean_profit_wi,mean_profit_ii,"
             "turnover_total,client_paid_total"]
    for d in result.diagnostics:
        wi = "" if d.mean_profit_wi is None else f"{d.mean_profit_wi:.6f}"
        ii = "" if d.mean_profit_ii is None else f"{d.mean_profit_ii:.6f}"
        lines.append(
            f"{d.round_index},{d.state_of_art},{wi},{ii},"
            f"{d.turnover_total:.6f},{d.client_paid_total:.6f}"
        )
    Path(destination).write_text("\n".join(lines) + "\n")


def cmd_sweep(args: argparse.Namespace) -> int:
    v = _resolve(args, _SWEEP_KEYS)
    if "seed" not in v:
        raise ConfigError("seed", "required in sweep mode (no wall-clock seeding)")
    profile = v.get("profile", "desk")
    if profile not in ("desk", "paper"):
        raise ConfigError("profile", f"must be desk or paper (got '{profile}')")
    scale = dict(DESK_SCALE if profile == "desk" else PAPER_SCALE)
    grid = SweepGrid(
        rep_systems=_parse_rep(v.get("rep", "both")),
        delta_n_arg_values=v.get("delta_n_arg", DEFAULT_DELTA_N_ARG),
        f_ii_values=v.get("f_ii", DEFAULT_F_II),
        delta_values=v.get("delta", DEFAULT_DELTA),
        alpha_values=v.get("alpha", DEFAULT_ALPHAS),
        runs_per_point=v.get("runs", scale["runs_per_point"]),
        base_seed=v["seed"],
        scenario=ScenarioParams(
            n_clients=v.get("clients", scale["n_clients"]),
            n_consultants=v.get("consultants", scale["n_consultants"]),
            rounds=v.get("rounds", scale["rounds"]),
            c_arg=v.get("c_arg", 1.0),
            n_arg_total=v.get("n_arg_total"),
        ),
    )
    print(
        "config: "
        f"profile={profile} reps={','.join(r.value for r in grid.rep_systems)} "
        f"delta_n_arg={list(grid.delta_n_arg_values)} "
        f"f_ii={list(grid.f_ii_values)} delta={list(grid.delta_values)} "
        f"alphas={len(grid.alpha_values)} runs={grid.runs_per_point} "
        f"clients={grid.scenario.n_clients} "
        f"consultants={grid.scenario.n_consultants} "
        f"rounds={grid.scenario.rounds} n_arg_total={grid.n_arg_total()} "
        f"seed={grid.base_seed} workers={args.workers}"
    )
    records = run_sweep(grid, workers=args.workers,
                        log=lambda line: print(line, file=sys.stderr))
    write_csv(records, args.out)
    print(f"wrote {len(records)} records to {args.out}")
    return 0


def _labeling_line(lab: Labeling, names: dict[int, str]) -> str:
    return " ".join(f"{names[a]}={label.value}" for a, label in lab.entries)


def cmd_af(args: argparse.Namespace) -> int:
    if args.chain is not None:
        af = chain_framework(args.chain)
        names = {i: f"A{i}" for i in af.arguments}
    else:
        af, names = parse_apx(Path(args.file).read_text())
    print(f"arguments: {len(af.arguments)} attacks: {len(af.attacks)}")
    print(f"grounded: {_labeling_line(grounded_labeling(af), names)}")
    if len(af.arguments) <= MAX_ENUMERATION_ARGS:
        labelings = complete_labelings(af)
        print(f"complete labelings: {len(labelings)}")
        for line in sorted(_labeling_line(lab, names) for lab in labelings):
            print(line)
    else:
        print(f"complete labelings: skipped ({len(af.arguments)} arguments "
              f"exceed the enumeration bound {MAX_ENUMERATION_ARGS})")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="argmarket",
        description="Client-consultant information-market simulator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run one simulation")
    sim.add_argument("--config", help="flat key = value config file")
    sim.add_argument("--clients", type=int)
    sim.add_argument("--consultants", type=int)
    sim.add_argument("--rounds", type=int)
    sim.add_argument("--f-ii", dest="f_ii", type=float)
    sim.add_argument("--alpha", type=float)
    sim.add_argument("--delta", type=float)
    sim.add_argument("--delta-n-arg", dest="delta_n_arg", type=int)
    sim.add_argument("--c-arg", dest="c_arg", type=float)
    sim.add_argument("--rep", choices=["r1", "r2"])
    sim.add_argument("--seed", type=int)
    sim.add_argument("--n-arg-total", dest="n_arg_total", type=int)
    sim.add_argument("--diagnostics-out", help="per-round diagnostics CSV path")
    sim.set_defaults(func=cmd_simulate)

    swp = sub.add_parser("sweep", help="run the experiment grid, write CSV")
    swp.add_argument("--config", help="flat key = value config file")
    swp.add_argument("--profile", choices=["desk", "paper"])
    swp.add_argument("--rep", choices=["r1", "r2", "both"])
    swp.add_argument("--delta-n-arg", dest="delta_n_arg", type=_int_list,
                     help="comma-separated list, e.g. 2,3,4")
    swp.add_argument("--f-ii", dest="f_ii", type=_float_list)
    swp.add_argument("--delta", type=_float_list)
    swp.add_argument("--alpha", type=_float_list)
    swp.add_argument("--runs", type=int)
    swp.add_argument("--clients", type=int)
    swp.add_argument("--consultants", type=int)
    swp.add_argument("--rounds", type=int)
    swp.add_argument("--c-arg", dest="c_arg", type=float)
    swp.add_argument("--n-arg-total", dest="n_arg_total", type=int)
    swp.add_argument("--seed", type=int)
    swp.add_argument("--workers", type=int, default=1)
    swp.add_argument("--out", required=True, help="destination CSV path")
    swp.set_defaults(func=cmd_sweep)

    af = sub.add_parser("af", help="inspect an argumentation framework")
    which = af.add_mutually_exclusive_group(required=True)
    which.add_argument("--chain", type=int, help="chain framework of length N")
    which.add_argument("--file", help="apx framework file")
    af.set_defaults(func=cmd_af)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:  # argparse printed the usage message already
        return 0 if exit_.code in (0, None) else int(exit_.code)
    try:
        return args.func(args)
    except (ConfigError, ApxParseError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except OSError as err:
        print(f"i/o error: {err}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
