"""Experience-sharing reputation systems R1 and R2.

Both keep one global pair of counters per consultant (positive and negative
experiences, perfect information sharing).  R1 judges each consultation on the
spot: better informed than the client is positive, anything else negative.
R2 re-judges the client's whole advice history against the most recent trusted
advice: compatible parity is positive, conflicting parity negative; a failed
consultation only adds one negative mark, as in R1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

from .market import AdviceEvent


class RepSystem(Enum):
    R1 = "R1"
    R2 = "R2"


@dataclass
class ReputationLedger:
    system: RepSystem
    positive: list[int] = field(default_factory=list)
    negative: list[int] = field(default_factory=list)

    @classmethod
    def empty(cls, system: RepSystem, n_consultants: int) -> "ReputationLedger":
        return cls(system, [0] * n_consultants, [0] * n_consultants)

    def raw_scores(self) -> list[int]:
        return [p - n for p, n in zip(self.positive, self.negative)]


def record_r1(ledger: ReputationLedger, consultant_id: int, success: bool) -> None:
    """Count one consultation under R1: positive when the consultant was
    better informed than the client, negative otherwise."""
    if ledger.system is not RepSystem.R1:
        raise ValueError("record_r1 called on a non-R1 ledger")
    if success:
        ledger.positive[consultant_id] += 1
    else:
        ledger.negative[consultant_id] += 1


def record_r2(
    ledger: ReputationLedger,
    client_history: Sequence[AdviceEvent],
    truth_index: int,
    failed_consultant: Optional[int] = None,
) -> None:
    """Count one consultation under R2.

    On success (failed_consultant is None) the client takes `truth_index` (the
    argument it was just advised on) as correct and re-judges every event in
    its history, the newest included: same parity earns the advising
    consultant a positive mark, different parity a negative one.  On failure
    only the failing consultant collects a single negative mark; no new advice
    arrived, so nothing is re-judged.
    """
    if ledger.system is not RepSystem.R2:
        raise ValueError("record_r2 called on a non-R2 ledger")
    if failed_consultant is not None:
        ledger.negative[failed_consultant] += 1
        return
    positive = ledger.positive
    negative = ledger.negative
    truth_parity = truth_index % 2
    for event in client_history:
        if event.last_advised_index % 2 == truth_parity:
            positive[event.consultant_id] += 1
        else:
            negative[event.consultant_id] += 1


def raw_score(n_pos: int, n_neg: int) -> int:
    """Intermediate reputation score: positive minus negative experiences."""
    return n_pos - n_neg


def minmax_normalize(values: Sequence[float]) -> list[float]:
    """Affine map of `values` onto [0, 1] (min to 0, max to 1).  When all
    values coincide the formula degenerates to 0/0; every output is then 0.5,
    which keeps selection neutral."""
    if len(values) == 0:
        raise ValueError("cannot normalize an empty list")
    lo = min(values)
    hi = max(values)
    if hi == lo:
        return [0.5] * len(values)
    span = hi - lo
    return [(v - lo) / span for v in values]
