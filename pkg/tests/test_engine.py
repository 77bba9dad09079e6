import math

import numpy as np
import pytest

from argmarket.engine import (
    ConfigError,
    SimConfig,
    Simulation,
    _consultation_round,
    cumulative_weights,
    make_rng,
    pick_from_cumulative,
    round_selection_weights,
    run_simulation,
    select_consultant,
    selection_weight,
)
from argmarket.market import Strategy
from argmarket.reputation import RepSystem


def desk_config(**overrides):
    base = dict(n_clients=64, n_consultants=8, rounds=16, f_ii=0.5,
                delta_n_arg=2, alpha=0.5, delta=0.5, c_arg=1.0,
                rep_system=RepSystem.R1, seed=7, n_arg_total=33)
    base.update(overrides)
    return SimConfig(**base)


# --- selection ---------------------------------------------------------------

def test_selection_weight_examples():
    assert selection_weight(0.3, 0.9, 1.0) == 0.3
    assert selection_weight(0.3, 0.9, 0.0) == 0.9
    assert selection_weight(0.4, 0.8, 0.5) == pytest.approx(0.6)


def test_zero_weight_never_selected():
    rng = make_rng(1)
    assert all(select_consultant([1.0, 0.0], rng) == 0 for _ in range(200))


def test_selection_frequencies_proportional():
    rng = make_rng(2)
    draws = 100_000
    hits = sum(select_consultant([1.0, 3.0], rng) for _ in range(draws))
    assert hits / draws == pytest.approx(0.75, abs=0.02)


def test_all_zero_weights_fall_back_to_uniform():
    rng = make_rng(3)
    counts = [0, 0, 0]
    draws = 100_000
    for _ in range(draws):
        counts[select_consultant([0.0, 0.0, 0.0], rng)] += 1
    for c in counts:
        assert c / draws == pytest.approx(1 / 3, abs=0.02)


def test_select_consultant_input_validation():
    rng = make_rng(4)
    with pytest.raises(ValueError):
        select_consultant([], rng)
    with pytest.raises(ValueError):
        select_consultant([1.0, -0.5], rng)


def test_pick_skips_zero_weight_tail_at_boundary():
    cum = cumulative_weights([1.0, 0.0, 0.0])
    assert pick_from_cumulative(cum, 0.999999999) == 0


def test_kernel_selection_matches_pick_from_cumulative():
    weights = [0.3, 0.0, 1.2, 0.0, 0.0, 2.5, 0.0]
    n_cons = len(weights)
    cum = cumulative_weights(weights)
    rng = make_rng(5)
    draws = rng.random(5000)
    expected = [pick_from_cumulative(cum, u) for u in draws.tolist()]
    selected = np.zeros(5000, dtype=np.int64)
    # all consultations fail (everyone equally informed), so only selection runs
    _consultation_round(
        draws, np.array(cum), cum[-1], np.zeros(n_cons), np.zeros(n_cons, bool),
        np.ones(n_cons, dtype=np.int64), np.zeros(n_cons, dtype=np.int64),
        np.ones(5000, dtype=np.int64), np.zeros(n_cons, dtype=np.int64),
        np.zeros(n_cons, dtype=np.int64), True, 1, 0,
        np.zeros((5000, 1), dtype=np.int64), np.zeros((5000, 1), dtype=np.int64),
        np.zeros((5000, 1), dtype=np.int64), np.zeros(5000, dtype=np.int64),
        np.zeros(n_cons, dtype=np.int64), np.zeros(5000), selected,
    )
    assert selected.tolist() == expected


def test_round_weights_exclude_capped_quotes():
    # the capped consultant sits the round out (weight 0 despite the best
    # reputation) and leaves the price normalization entirely
    weights = round_selection_weights(
        prices=[0.3, 0.5, 2.0], raw_scores=[5, 7, 9], alpha=0.5, cap=2.0
    )
    # active prices [0.3, 0.5] normalize to [0, 1]; reputations to [0, 0.5, 1]
    assert weights == pytest.approx([0.5, 0.25, 0.0])


def test_round_weights_all_capped_mean_uniform_fallback():
    assert round_selection_weights([2.0, 2.0], [0, 0], 0.7, 2.0) == [0.0, 0.0]


def test_block_draws_equal_scalar_draws():
    # the engine draws per-round blocks; must match one-at-a-time consumption
    block = make_rng(42).random(64)
    one_at_a_time = [make_rng(42).random() for _ in range(1)]
    assert block[0] == one_at_a_time[0]
    g = make_rng(42)
    assert [g.random() for _ in range(64)] == block.tolist()


# --- config validation ---------------------------------------------------------

@pytest.mark.parametrize(
    "field,overrides",
    [
        ("n_clients", dict(n_clients=0)),
        ("n_consultants", dict(n_consultants=0)),
        ("rounds", dict(rounds=-1)),
        ("f_ii", dict(f_ii=1.5)),
        ("delta_n_arg", dict(delta_n_arg=0)),
        ("alpha", dict(alpha=-0.1)),
        ("delta", dict(delta=-1.0)),
        ("c_arg", dict(c_arg=0.0)),
        ("seed", dict(seed=-1)),
        ("n_arg_total", dict(n_arg_total=10)),
    ],
)
def test_config_validation_names_field(field, overrides):
    with pytest.raises(ConfigError) as exc:
        desk_config(**overrides)
    assert exc.value.field == field
    assert field in str(exc.value)


def test_ii_head_count_rounding():
    assert desk_config(f_ii=0.5).n_ii == 4
    assert desk_config(f_ii=0.1).n_ii == 1
    assert desk_config(f_ii=0.9, n_consultants=32, n_clients=64).n_ii == 29


# --- simulation behavior ----------------------------------------------------------

def test_zero_rounds_mean_zero_profit():
    result = run_simulation(desk_config(rounds=0, n_arg_total=1))
    assert result.profits == tuple([0.0] * 8)
    assert result.diagnostics == ()


def test_strategy_split():
    result = run_simulation(desk_config(rounds=1, f_ii=0.25, n_arg_total=33))
    assert result.strategies.count(Strategy.II) == 2
    assert result.strategies.count(Strategy.WI) == 6
    assert result.strategies[:2] == (Strategy.II, Strategy.II)


def test_all_wi_population_shares_latest():
    config = desk_config(f_ii=0.0)
    sim = Simulation(config)
    for _ in range(config.rounds):
        sim.run_round()
        assert set(sim.cons_latest.tolist()) == {sim.state_of_art}


def test_first_round_trace():
    # release moves the state of the art to 3; wi buy two arguments, ii none
    # before consultations; every sale happens at the opening cap price
    config = desk_config(delta_n_arg=2)
    sim = Simulation(config)
    sim.run_round()
    assert sim.state_of_art == 3
    wi = [i for i, s in enumerate(sim.strategies) if s is Strategy.WI]
    assert all(int(sim.cons_latest[i]) == 3 for i in wi)
    assert all(int(sim.cons_purchased[i]) == 2 for i in wi)
    for payments in sim.payments:
        assert all(p == 2.0 for p in payments)
    # R1: every client left exactly one mark
    assert int(sim.positive.sum() + sim.negative.sum()) == config.n_clients


def test_client_knowledge_monotone_and_bounded():
    config = desk_config(rep_system=RepSystem.R2)
    sim = Simulation(config)
    previous = sim.client_latest.copy()
    for _ in range(config.rounds):
        sim.run_round()
        assert (sim.client_latest >= previous).all()
        assert int(sim.client_latest.max()) <= int(sim.cons_latest.max())
        assert int(sim.cons_latest.max()) <= sim.state_of_art
        previous = sim.client_latest.copy()


@pytest.mark.parametrize("rep", [RepSystem.R1, RepSystem.R2])
def test_invariants_hold_each_round(rep):
    config = desk_config(rep_system=rep)
    sim = Simulation(config)
    for _ in range(config.rounds):
        sim.run_round()
        sim.check_invariants()


def test_run_simulation_with_checks_matches_plain_run():
    checked = run_simulation(desk_config(), check_invariants=True)
    plain = run_simulation(desk_config())
    assert checked == plain


def test_profit_identity_from_raw_result():
    result = run_simulation(desk_config(rep_system=RepSystem.R2))
    for profit, payments, purchased in zip(result.profits, result.payments,
                                           result.purchased):
        assert profit == math.fsum(payments) - purchased * 1.0


def test_replay_determinism():
    a = run_simulation(desk_config())
    b = run_simulation(desk_config())
    assert a == b
    c = run_simulation(desk_config(seed=8))
    assert c.profits != a.profits


def test_diagnostics_progression():
    result = run_simulation(desk_config(rounds=4))
    assert [d.round_index for d in result.diagnostics] == [0, 1, 2, 3]
    assert [d.state_of_art for d in result.diagnostics] == [3, 5, 7, 9]
    for d in result.diagnostics:
        assert d.turnover_total == d.client_paid_total


def test_snapshots_are_consistent_views():
    config = desk_config(rep_system=RepSystem.R2, rounds=6)
    sim = Simulation(config)
    for _ in range(config.rounds):
        sim.run_round()
    consultants = sim.consultants_snapshot()
    clients = sim.clients_snapshot()
    total_sales = sum(len(c.payments) for c in consultants)
    total_advice = sum(len(c.history) for c in clients)
    assert total_sales == total_advice == len(sim.client_paid_log)
    for client in clients:
        rounds_seen = [e.round_index for e in client.history]
        assert rounds_seen == sorted(rounds_seen)
        if client.history:
            assert client.history[-1].last_advised_index == client.latest
    ledger = sim.ledger()
    assert ledger.positive == sim.positive.tolist()


def test_state_of_art_capped_at_chain_capacity():
    config = desk_config(rounds=4, delta_n_arg=2, n_arg_total=9)
    sim = Simulation(config)
    for _ in range(4):
        sim.run_round()
    assert sim.state_of_art == 9
