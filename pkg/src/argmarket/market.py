"""Pure rules of the consultant market.

Knowledge is a gapless prefix of the argument chain: an agent at `latest = k`
knows exactly arguments 1..k.  Index 0 means "knows nothing beyond common
ground"; everybody starts at latest = 1 because the first argument is common
knowledge and therefore free (a consultant's expenses cover the latest - 1
arguments actually bought).  Parity of an index is its value mod 2, so the
parity of 0 is even.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, NamedTuple, Optional


class Strategy(Enum):
    WI = "wi"  # well-informed: buys every release immediately
    II = "ii"  # ill-informed: buys only when a client proves equally informed


class AdviceEvent(NamedTuple):
    """One paid consultation as remembered by the client."""

    consultant_id: int
    last_advised_index: int
    round_index: int


@dataclass(slots=True)
class Consultant:
    id: int
    strategy: Strategy
    latest: int = 1  # highest known argument index, prefix is gapless
    purchased: int = 0  # arguments bought so far (the free first one excluded)
    payments: list[float] = field(default_factory=list)

    def expense_total(self, c_arg: float) -> float:
        return expenses(self.purchased, c_arg)

    def turnover_total(self) -> float:
        return turnover(self.payments)

    def profit_total(self, c_arg: float) -> float:
        return profit(self.turnover_total(), self.expense_total(c_arg))

    def buy_up_to(self, target: int) -> None:
        """Extend the known prefix to `target`; no-op when already there."""
        if target > self.latest:
            self.purchased += target - self.latest
            self.latest = target


@dataclass(slots=True)
class Client:
    id: int
    latest: int = 1
    history: list[AdviceEvent] = field(default_factory=list)


@dataclass(frozen=True)
class MarketParams:
    """Market-wide constants: per-argument cost, profit margin, chain capacity
    and per-round release rate."""

    c_arg: float = 1.0
    delta: float = 0.5
    n_arg_total: int = 1
    delta_n_arg: int = 1

    def __post_init__(self):
        if self.c_arg <= 0:
            raise ValueError("c_arg must be positive")
        if self.delta < 0:
            raise ValueError("delta must be non-negative")
        if self.n_arg_total < 1:
            raise ValueError("n_arg_total must be at least 1")
        if self.delta_n_arg < 1:
            raise ValueError("delta_n_arg must be at least 1")


def expenses(n_bought: int, c_arg: float) -> float:
    """Total acquisition cost of `n_bought` arguments at constant unit cost."""
    if n_bought < 0:
        raise ValueError("argument count must be non-negative")
    if c_arg <= 0:
        raise ValueError("c_arg must be positive")
    return n_bought * c_arg


def turnover(payments: Iterable[float]) -> float:
    """Sum of all prices ever paid to a consultant; empty means 0."""
    return math.fsum(payments)


def profit(t: float, e: float) -> float:
    return t - e


def quote_price(e: float, successes: int, delta: float, c_arg: float) -> float:
    """Cost-recovery price (1 + delta) * E / |S|, capped at 2 * c_arg, the cost
    of the at-most-two arguments a consultation conveys.  With no successes yet
    the ratio is undefined and the cap is quoted."""
    if e < 0:
        raise ValueError("expenses must be non-negative")
    if delta < 0:
        raise ValueError("delta must be non-negative")
    cap = 2.0 * c_arg
    if successes == 0:
        return cap
    return min((1.0 + delta) * e / successes, cap)


def advice_outcome(client_latest: int, consultant_latest: int) -> Optional[int]:
    """Number of arguments a consultation conveys, or None when it fails.

    Fails when the consultant is not strictly better informed.  Otherwise the
    client receives two arguments when both parties' latest indices share
    parity and one argument otherwise, so the client always ends on the
    consultant's parity (the consultant's own asserted position).
    """
    if client_latest < 0 or consultant_latest < 0:
        raise ValueError("indices must be non-negative")
    if consultant_latest <= client_latest:
        return None
    return 2 if (consultant_latest - client_latest) % 2 == 0 else 1


def ii_topup_target(client_latest: int, own_latest: int, state_of_art: int) -> int:
    """Prefix length an ill-informed consultant buys up to after meeting a
    client at least as informed as itself: one argument past the client,
    capped at the state of the art.  Better-informed consultants buy nothing.
    """
    if own_latest > state_of_art or client_latest > state_of_art:
        raise ValueError("latest indices cannot exceed the state of the art")
    if client_latest >= own_latest:
        return min(client_latest + 1, state_of_art)
    return own_latest
