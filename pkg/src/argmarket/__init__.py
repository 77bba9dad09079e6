"""Deterministic client-consultant information-market simulator built on a
reusable abstract-argumentation core."""

from .argumentation import (
    ArgumentationFramework,
    Label,
    Labeling,
    at_least_as_informed,
    can_defend,
    can_deny,
    chain_framework,
    complete_labelings,
    framework_union,
    grounded_labeling,
    is_complete_labeling,
    is_subframework,
)
from .engine import ConfigError, SimConfig, SimResult, Simulation, run_simulation
from .market import (
    AdviceEvent,
    Client,
    Consultant,
    MarketParams,
    Strategy,
    advice_outcome,
    expenses,
    ii_topup_target,
    profit,
    quote_price,
    turnover,
)
from .reputation import (
    RepSystem,
    ReputationLedger,
    minmax_normalize,
    raw_score,
    record_r1,
    record_r2,
)
from .sweep import ScenarioParams, SweepGrid, SweepRecord, aggregate, run_sweep, write_csv

__all__ = [
    "AdviceEvent",
    "ArgumentationFramework",
    "Client",
    "ConfigError",
    "Consultant",
    "Label",
    "Labeling",
    "MarketParams",
    "RepSystem",
    "ReputationLedger",
    "ScenarioParams",
    "SimConfig",
    "SimResult",
    "Simulation",
    "Strategy",
    "SweepGrid",
    "SweepRecord",
    "advice_outcome",
    "aggregate",
    "at_least_as_informed",
    "can_defend",
    "can_deny",
    "chain_framework",
    "complete_labelings",
    "expenses",
    "framework_union",
    "grounded_labeling",
    "ii_topup_target",
    "is_complete_labeling",
    "is_subframework",
    "minmax_normalize",
    "profit",
    "quote_price",
    "raw_score",
    "record_r1",
    "record_r2",
    "run_simulation",
    "run_sweep",
    "turnover",
    "write_csv",
]

__version__ = "0.1.0"
