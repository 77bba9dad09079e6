"""Render profit-versus-alpha figures from a sweep CSV.

One image per parameter combination (rep_system, delta_n_arg, f_ii, delta):
alpha on the x-axis, mean profit on the y-axis, one error-bar line per
strategy present in the data.  Output is deterministic: rendering the same
CSV twice produces byte-identical svg.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Optional, Sequence, Union

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

REQUIRED_COLUMNS = (
    "rep_system", "delta_n_arg", "f_ii", "delta", "alpha",
    "strategy", "mean_profit", "std_profit", "n_runs",
)
#: Columns a figure selector may filter on (one figure per distinct value set).
COMBINATION_COLUMNS = ("rep_system", "delta_n_arg", "f_ii", "delta")
STRATEGY_ORDER = ("wi", "ii")
STRATEGY_STYLE = {"wi": dict(color="#1f77b4", marker="o"),
                  "ii": dict(color="#d62728", marker="s")}


class SchemaError(ValueError):
    """The CSV does not conform to the sweep schema; names what is missing."""


class NoMatchError(ValueError):
    """A figure selector matched no CSV row."""


@dataclass(frozen=True)
class FigureSpec:
    out_dir: Union[str, Path]
    image_format: str = "svg"
    filters: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if self.image_format not in ("png", "svg"):
            raise ValueError(f"unsupported image format '{self.image_format}'")
        unknown = set(self.filters) - set(COMBINATION_COLUMNS)
        if unknown:
            raise ValueError(
                f"unknown filter keys {sorted(unknown)}; "
                f"expected a subset of {list(COMBINATION_COLUMNS)}"
            )


def read_rows(csv_path: Union[str, Path]) -> list[dict]:
    """Parse and type the sweep CSV, validating the schema first."""
    with open(csv_path, newline="") as handle:
        reader = csv.DictReader(handle)
        header = reader.fieldnames or []
        missing = [c for c in REQUIRED_COLUMNS if c not in header]
        if missing:
            raise SchemaError(f"missing column '{missing[0]}'")
        rows = []
        for raw in reader:
            rows.append({
                "rep_system": raw["rep_system"],
                "delta_n_arg": int(raw["delta_n_arg"]),
                "f_ii": float(raw["f_ii"]),
                "delta": float(raw["delta"]),
                "alpha": float(raw["alpha"]),
                "strategy": raw["strategy"],
                "mean_profit": float(raw["mean_profit"]),
                "std_profit": float(raw["std_profit"]),
                "n_runs": int(raw["n_runs"]),
            })
    return rows


def _matches(row: dict, filters: Mapping[str, str]) -> bool:
    for key, wanted in filters.items():
        value = row[key]
        if isinstance(value, str):
            if value != wanted:
                return False
        elif float(value) != float(wanted):
            return False
    return True


def combination_key(row: dict) -> tuple:
    return tuple(row[c] for c in COMBINATION_COLUMNS)


def curves_for_combination(rows: Sequence[dict]) -> list[dict]:
    """Per-strategy curve data (sorted by alpha) for one combination's rows."""
    curves = []
    for strategy in STRATEGY_ORDER:
        group = sorted(
            (r for r in rows if r["strategy"] == strategy),
            key=lambda r: r["alpha"],
        )
        if group:
            curves.append({
                "strategy": strategy,
                "alphas": [r["alpha"] for r in group],
                "means": [r["mean_profit"] for r in group],
                "stds": [r["std_profit"] for r in group],
            })
    return curves


def figure_filename(key: tuple, image_format: str) -> str:
    rep, delta_n_arg, f_ii, delta = key
    return f"rep{rep}_dn{delta_n_arg}_fii{f_ii:g}_delta{delta:g}.{image_format}"


def _render_figure(key: tuple, curves: list[dict], destination: Path) -> None:
    plt.rcParams["svg.hashsalt"] = "argmarket-plots"
    plt.rcParams["svg.fonttype"] = "none"
    rep, delta_n_arg, f_ii, delta = key
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for curve in curves:
        ax.errorbar(
            curve["alphas"], curve["means"], yerr=curve["stds"],
            label=curve["strategy"], capsize=3, linewidth=1.5,
            **STRATEGY_STYLE[curve["strategy"]],
        )
    ax.set_xlabel("alpha (weight of cheapness in selection)")
    ax.set_ylabel("mean profit")
    ax.set_title(
        f"{rep}, delta_n_arg={delta_n_arg}, f_ii={f_ii:g}, delta={delta:g}"
    )
    ax.legend(title="strategy")
    ax.grid(True, alpha=0.3)
    fig.text(0.99, 0.01, "error bars: 1 sample standard deviation over runs",
             ha="right", fontsize=7, color="#555555")
    fig.tight_layout(rect=(0, 0.03, 1, 1))
    fig.savefig(destination, format=destination.suffix.lstrip("."),
                metadata={"Date": None} if destination.suffix == ".svg" else None)
    plt.close(fig)


def render(csv_path: Union[str, Path], spec: FigureSpec) -> list[Path]:
    """Write one image per parameter combination; returns the paths written."""
    rows = [r for r in read_rows(csv_path) if _matches(r, spec.filters)]
    if not rows:
        raise NoMatchError(f"no rows of {csv_path} match {dict(spec.filters)}")
    grouped: dict[tuple, list[dict]] = {}
    for row in rows:
        grouped.setdefault(combination_key(row), []).append(row)
    out_dir = Path(spec.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for key in sorted(grouped, key=str):
        destination = out_dir / figure_filename(key, spec.image_format)
        _render_figure(key, curves_for_combination(grouped[key]), destination)
        written.append(destination)
    return written
