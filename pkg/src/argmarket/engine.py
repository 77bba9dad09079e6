"""Seeded round-loop simulation of the consultant market.

Each round advances through a fixed phase order: (1) new arguments are
released, (2) well-informed consultants buy up to the state of the art,
(3) prices and reputations are snapshotted and normalized, with consultants
quoting at the price cap sitting the round out (see round_selection_weights),
(4) every client, in id order, picks one consultant proportionally to the
blended cheapness/reputation weight and consults it, (5) the round counter
advances.  Prices paid within a round are the phase-3 snapshot, so
intra-round order only decides which random draw goes to which client.

All randomness flows from one Philox4x64-10 counter-based generator keyed by
``SeedSequence(config.seed)``; one uniform draw is consumed per client per
round, so identical configs replay bit-identically.  The consultation loop
itself runs over flat arrays (jitted by numba when available) because sweeps
execute it tens of thousands of times.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from itertools import chain
from typing import Optional, Sequence

import numpy as np

from .market import (
    AdviceEvent,
    Client,
    Consultant,
    MarketParams,
    Strategy,
    expenses,
    quote_price,
    turnover,
)
from .reputation import RepSystem, ReputationLedger, minmax_normalize


class ConfigError(ValueError):
    """A simulation config violated an invariant; names the offending field."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


@dataclass(frozen=True)
class SimConfig:
    n_clients: int
    n_consultants: int
    rounds: int
    f_ii: float
    delta_n_arg: int
    alpha: float
    delta: float
    c_arg: float
    rep_system: RepSystem
    seed: int
    n_arg_total: int

    def __post_init__(self):
        if self.n_clients < 1:
            raise ConfigError("n_clients", "must be at least 1")
        if self.n_consultants < 1:
            raise ConfigError("n_consultants", "must be at least 1")
        if self.rounds < 0:
            raise ConfigError("rounds", "must be non-negative")
        if not 0.0 <= self.f_ii <= 1.0:
            raise ConfigError("f_ii", "must lie in [0, 1]")
        if self.delta_n_arg < 1:
            raise ConfigError("delta_n_arg", "must be at least 1")
        if not 0.0 <= self.alpha <= 1.0:
            raise ConfigError("alpha", "must lie in [0, 1]")
        if self.delta < 0.0:
            raise ConfigError("delta", "must be non-negative")
        if self.c_arg <= 0.0:
            raise ConfigError("c_arg", "must be positive")
        if not isinstance(self.rep_system, RepSystem):
            raise ConfigError("rep_system", "must be a RepSystem")
        if not (isinstance(self.seed, int) and 0 <= self.seed < 2**64):
            raise ConfigError("seed", "must be a 64-bit unsigned integer")
        if self.n_arg_total < 1 + self.rounds * self.delta_n_arg:
            raise ConfigError(
                "n_arg_total",
                f"must be at least 1 + rounds * delta_n_arg = "
                f"{1 + self.rounds * self.delta_n_arg}",
            )

    @property
    def n_ii(self) -> int:
        """Ill-informed consultant count: round(f_ii * n_consultants)."""
        return round(self.f_ii * self.n_consultants)

    def market_params(self) -> MarketParams:
        return MarketParams(self.c_arg, self.delta, self.n_arg_total, self.delta_n_arg)


@dataclass(frozen=True)
class RoundDiagnostics:
    round_index: int
    state_of_art: int
    mean_profit_wi: Optional[float]
    mean_profit_ii: Optional[float]
    turnover_total: float
    client_paid_total: float


@dataclass(frozen=True)
class SimResult:
    config: SimConfig
    strategies: tuple[Strategy, ...]
    profits: tuple[float, ...]
    purchased: tuple[int, ...]
    payments: tuple[tuple[float, ...], ...]
    positive: tuple[int, ...]
    negative: tuple[int, ...]
    diagnostics: tuple[RoundDiagnostics, ...]

    def mean_profit(self, strategy: Strategy) -> Optional[float]:
        group = [p for p, s in zip(self.profits, self.strategies) if s is strategy]
        if not group:
            return None
        return math.fsum(group) / len(group)


def selection_weight(cheapness: float, reputation: float, alpha: float) -> float:
    """Blend of normalized cheapness and reputation; alpha = 1 is price-only
    selection, alpha = 0 reputation-only."""
    return alpha * cheapness + (1.0 - alpha) * reputation


def round_selection_weights(
    prices: Sequence[float],
    raw_scores: Sequence[float],
    alpha: float,
    cap: float,
) -> list[float]:
    """Per-consultant selection weights for one round.

    A consultant whose quote has reached the price cap is out of the market
    for the round (no client buys advice for more than the advised arguments
    would cost to acquire): it gets weight zero and is left out of the price
    normalization, so cheapness ranges over the actually-buyable quotes.
    Reputation is normalized over all consultants.  When nobody is below the
    cap (the opening round, before anyone has sold) every weight is zero and
    selection falls back to uniform.
    """
    active = [p < cap for p in prices]
    reputations = minmax_normalize(raw_scores)
    if not any(active):
        return [0.0] * len(prices)
    normalized = iter(minmax_normalize([p for p, a in zip(prices, active) if a]))
    return [
        selection_weight(1.0 - next(normalized), reputations[i], alpha) if a else 0.0
        for i, a in enumerate(active)
    ]


def cumulative_weights(weights: Sequence[float]) -> list[float]:
    cum = []
    running = 0.0
    for w in weights:
        if w < 0:
            raise ValueError("weights must be non-negative")
        running += w
        cum.append(running)
    return cum


def pick_from_cumulative(cum: Sequence[float], u: float) -> int:
    """Map one uniform draw u in [0, 1) onto an index proportionally to the
    weight increments in `cum`; falls back to a uniform pick when all weights
    are zero.  Consumes exactly the one draw it is given."""
    n = len(cum)
    total = cum[-1]
    if total <= 0.0:
        i = int(u * n)
        return i if i < n else n - 1
    idx = bisect_right(cum, u * total)
    if idx >= n:
        idx = n - 1
        while idx > 0 and cum[idx] == cum[idx - 1]:
            idx -= 1
    return idx


def select_consultant(weights: Sequence[float], rng: np.random.Generator) -> int:
    """Roulette-wheel pick: index i with probability weights[i] / sum(weights),
    uniform over all indices when every weight is zero."""
    if len(weights) == 0:
        raise ValueError("weights must be non-empty")
    return pick_from_cumulative(cumulative_weights(weights), rng.random())


def make_rng(seed: int) -> np.random.Generator:
    """The simulation generator: Philox4x64-10 keyed via SeedSequence(seed)."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))


def _consultation_round(
    draws,  # float64[n_clients], one uniform per client in id order
    cum,  # float64[n_consultants], cumulative selection weights
    total,  # float64, cum[-1]
    prices,  # float64[n_consultants], phase-3 raw price snapshot
    is_ii,  # bool[n_consultants]
    cons_latest,  # int64[n_consultants], mutated
    cons_purchased,  # int64[n_consultants], mutated
    client_latest,  # int64[n_clients], mutated
    pos,  # int64[n_consultants], mutated
    neg,  # int64[n_consultants], mutated
    use_r1,  # bool: R1 ledger semantics, else R2
    soa,  # int64, state of the art after this round's release
    round_index,  # int64
    hist_cons,  # int64[n_clients, rounds], mutated advice history
    hist_idx,  # int64[n_clients, rounds], mutated
    hist_round,  # int64[n_clients, rounds], mutated
    hist_len,  # int64[n_clients], mutated
    round_pay_count,  # int64[n_consultants], out: sales this round
    paid_by_client,  # float64[n_clients], out: price paid or 0.0
    selected,  # int64[n_clients], out: chosen consultant per client
):
    """One round of client consultations over flat state arrays.

    Semantically: for each client in id order, pick_from_cumulative on its
    draw; a consultant not strictly better informed fails (one negative mark,
    unpaid, ill-informed ones then top up to one argument past the client);
    otherwise the client advances onto the consultant's parity, pays the
    snapshot price, logs the advice event and the ledger is updated (R1: one
    positive mark; R2: the whole history re-judged against the new advice).
    """
    n_clients = draws.shape[0]
    n_cons = cum.shape[0]
    for j in range(n_clients):
        u = draws[j]
        if total <= 0.0:
            k = int(u * n_cons)
            if k >= n_cons:
                k = n_cons - 1
        else:
            t = u * total
            lo = 0
            hi = n_cons
            while lo < hi:
                mid = (lo + hi) // 2
                if cum[mid] <= t:
                    lo = mid + 1
                else:
                    hi = mid
            k = lo
            if k >= n_cons:
                k = n_cons - 1
                while k > 0 and cum[k] == cum[k - 1]:
                    k -= 1
        selected[j] = k
        cl = client_latest[j]
        co = cons_latest[k]
        if co <= cl:
            neg[k] += 1
            if is_ii[k]:
                target = cl + 1
                if target > soa:
                    target = soa
                if target > co:
                    cons_purchased[k] += target - co
                    cons_latest[k] = target
        else:
            if (co - cl) % 2 == 0:
                new_latest = cl + 2
            else:
                new_latest = cl + 1
            client_latest[j] = new_latest
            round_pay_count[k] += 1
            paid_by_client[j] = prices[k]
            h = hist_len[j]
            hist_cons[j, h] = k
            hist_idx[j, h] = new_latest
            hist_round[j, h] = round_index
            hist_len[j] = h + 1
            if use_r1:
                pos[k] += 1
            else:
                truth_parity = new_latest % 2
                for s in range(h + 1):
                    if hist_idx[j, s] % 2 == truth_parity:
                        pos[hist_cons[j, s]] += 1
                    else:
                        neg[hist_cons[j, s]] += 1


try:  # pragma: no cover - exercised implicitly by the whole suite
    from numba import njit

    _consultation_round = njit(cache=True)(_consultation_round)
except ImportError:  # plain-Python fallback, same code object
    pass


class Simulation:
    """Mutable state of one simulation run; strictly single-threaded."""

    def __init__(self, config: SimConfig):
        self.config = config
        self.rng = make_rng(config.seed)
        n_cons = config.n_consultants
        n_clients = config.n_clients
        n_ii = config.n_ii
        self.strategies = tuple(
            Strategy.II if i < n_ii else Strategy.WI for i in range(n_cons)
        )
        self.is_ii = np.array([s is Strategy.II for s in self.strategies])
        self.cons_latest = np.ones(n_cons, dtype=np.int64)
        self.cons_purchased = np.zeros(n_cons, dtype=np.int64)
        self.client_latest = np.ones(n_clients, dtype=np.int64)
        self.positive = np.zeros(n_cons, dtype=np.int64)
        self.negative = np.zeros(n_cons, dtype=np.int64)
        slots = max(config.rounds, 1)
        self.hist_cons = np.zeros((n_clients, slots), dtype=np.int64)
        self.hist_idx = np.zeros((n_clients, slots), dtype=np.int64)
        self.hist_round = np.zeros((n_clients, slots), dtype=np.int64)
        self.hist_len = np.zeros(n_clients, dtype=np.int64)
        self.payments: list[list[float]] = [[] for _ in range(n_cons)]
        self.client_paid_log: list[float] = []
        self.state_of_art = 1
        self.round_index = 0
        self.diagnostics: list[RoundDiagnostics] = []

    def profits(self) -> list[float]:
        c_arg = self.config.c_arg
        return [
            turnover(self.payments[i]) - expenses(int(self.cons_purchased[i]), c_arg)
            for i in range(self.config.n_consultants)
        ]

    def run_round(self, collect_diagnostics: bool = True) -> None:
        cfg = self.config

        # 1. release: the state of the art advances, capped at chain capacity
        self.state_of_art = min(self.state_of_art + cfg.delta_n_arg, cfg.n_arg_total)
        soa = self.state_of_art

        # 2. wi consultants keep up with every release immediately
        wi = ~self.is_ii
        self.cons_purchased[wi] += soa - self.cons_latest[wi]
        self.cons_latest[wi] = soa

        # 3. per-round snapshots: raw prices, cheapness, reputation, weights
        c_arg = cfg.c_arg
        delta = cfg.delta
        prices = [
            quote_price(int(self.cons_purchased[i]) * c_arg, len(self.payments[i]),
                        delta, c_arg)
            for i in range(cfg.n_consultants)
        ]
        raw_scores = [int(p - n) for p, n in zip(self.positive, self.negative)]
        weights = round_selection_weights(prices, raw_scores, cfg.alpha,
                                          2.0 * c_arg)
        cum = cumulative_weights(weights)

        # 4. consultations, one per client, in fixed client-id order
        draws = self.rng.random(cfg.n_clients)
        prices_arr = np.array(prices)
        round_pay_count = np.zeros(cfg.n_consultants, dtype=np.int64)
        paid_by_client = np.zeros(cfg.n_clients)
        selected = np.zeros(cfg.n_clients, dtype=np.int64)
        _consultation_round(
            draws,
            np.array(cum),
            cum[-1],
            prices_arr,
            self.is_ii,
            self.cons_latest,
            self.cons_purchased,
            self.client_latest,
            self.positive,
            self.negative,
            cfg.rep_system is RepSystem.R1,
            soa,
            self.round_index,
            self.hist_cons,
            self.hist_idx,
            self.hist_round,
            self.hist_len,
            round_pay_count,
            paid_by_client,
            selected,
        )
        for i, count in enumerate(round_pay_count.tolist()):
            if count:
                self.payments[i].extend([prices[i]] * count)
        self.client_paid_log.extend(p for p in paid_by_client.tolist() if p > 0.0)

        # 5. the round is over
        self.round_index += 1
        if collect_diagnostics:
            self.diagnostics.append(self._round_diagnostics())

    def ledger(self) -> ReputationLedger:
        return ReputationLedger(
            self.config.rep_system, self.positive.tolist(), self.negative.tolist()
        )

    def consultants_snapshot(self) -> list[Consultant]:
        return [
            Consultant(
                id=i,
                strategy=self.strategies[i],
                latest=int(self.cons_latest[i]),
                purchased=int(self.cons_purchased[i]),
                payments=list(self.payments[i]),
            )
            for i in range(self.config.n_consultants)
        ]

    def clients_snapshot(self) -> list[Client]:
        clients = []
        for j in range(self.config.n_clients):
            history = [
                AdviceEvent(
                    int(self.hist_cons[j, s]),
                    int(self.hist_idx[j, s]),
                    int(self.hist_round[j, s]),
                )
                for s in range(int(self.hist_len[j]))
            ]
            clients.append(Client(id=j, latest=int(self.client_latest[j]),
                                  history=history))
        return clients

    def _round_diagnostics(self) -> RoundDiagnostics:
        profits = self.profits()
        by_strategy: dict[Strategy, list[float]] = {Strategy.WI: [], Strategy.II: []}
        for strategy, value in zip(self.strategies, profits):
            by_strategy[strategy].append(value)
        means = {
            strat: (math.fsum(vals) / len(vals) if vals else None)
            for strat, vals in by_strategy.items()
        }
        return RoundDiagnostics(
            round_index=self.round_index - 1,
            state_of_art=self.state_of_art,
            mean_profit_wi=means[Strategy.WI],
            mean_profit_ii=means[Strategy.II],
            turnover_total=math.fsum(chain.from_iterable(self.payments)),
            client_paid_total=math.fsum(self.client_paid_log),
        )

    def check_invariants(self) -> None:
        """Money conservation, knowledge monotonicity, gapless-prefix
        accounting and ledger-mass checks; raises AssertionError on violation."""
        cfg = self.config
        soa = self.state_of_art
        turnover_total = math.fsum(chain.from_iterable(self.payments))
        paid_total = math.fsum(self.client_paid_log)
        assert turnover_total == paid_total, "money conservation violated"
        assert int(self.cons_latest.max()) <= soa, "consultant knows more than exists"
        if self.round_index > 0:
            wi = ~self.is_ii
            assert bool((self.cons_latest[wi] == soa).all()), "wi consultant fell behind"
        assert bool((self.cons_purchased == self.cons_latest - 1).all()), \
            "gapless-prefix accounting broken"
        assert int(self.client_latest.max()) <= int(self.cons_latest.max()), \
            "client ahead of every consultant"
        profits = self.profits()
        for i, value in enumerate(profits):
            recomputed = turnover(self.payments[i]) - expenses(
                int(self.cons_purchased[i]), cfg.c_arg
            )
            assert value == recomputed, "profit identity violated"
        if cfg.rep_system is RepSystem.R1:
            mass = int(self.positive.sum() + self.negative.sum())
            assert mass == cfg.n_clients * self.round_index, "R1 ledger mass off"

    def result(self) -> SimResult:
        return SimResult(
            config=self.config,
            strategies=self.strategies,
            profits=tuple(self.profits()),
            purchased=tuple(int(p) for p in self.cons_purchased),
            payments=tuple(tuple(p) for p in self.payments),
            positive=tuple(int(p) for p in self.positive),
            negative=tuple(int(n) for n in self.negative),
            diagnostics=tuple(self.diagnostics),
        )


def run_simulation(
    config: SimConfig,
    *,
    collect_diagnostics: bool = True,
    check_invariants: bool = False,
) -> SimResult:
    """Run `config.rounds` rounds from the common start (everybody knows only
    the first argument, nothing bought, empty ledgers) and return the final
    per-consultant accounts."""
    sim = Simulation(config)
    for _ in range(config.rounds):
        sim.run_round(collect_diagnostics=collect_diagnostics)
        if check_invariants:
            sim.check_invariants()
    return sim.result()
