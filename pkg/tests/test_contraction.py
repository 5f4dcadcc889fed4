import math

import numpy as np
import pytest

from cutboost import (
    NOT_FOUND,
    ParameterError,
    QSchedule,
    boosted_fpz,
    boosted_karger_trial,
    build_graph,
    default_boosted_fpz_params,
    default_boosted_karger_params,
    dumbbell,
    fpz,
    karger_trial,
    perfect_prediction,
    repeat_until,
    stoer_wagner,
)
from cutboost.predictions import Prediction


def test_qschedule_plain_tail():
    sched = QSchedule(B=1.0, eta=0.0, rho=1.0, t=2)
    for i in range(3, 20):
        assert sched.q(i) == pytest.approx(1 - 2 / i)


def test_qschedule_boosted_value():
    sched = QSchedule(B=10.0, eta=0.5, rho=2.0, t=8)
    # i <= t: plain form
    assert sched.q(5) == pytest.approx(0.6)
    # i > t: 1 - (1 + 9*0.5) / (50 - 9*2.5) = 1 - 5.5/27.5
    assert sched.q(10) == pytest.approx(0.8)


def test_qschedule_b1_reduces_to_plain():
    boosted = QSchedule(B=1.0, eta=0.3, rho=4.0, t=5)
    for i in range(3, 30):
        assert boosted.q(i) == pytest.approx(1 - 2 / i)


def test_qschedule_rejects():
    with pytest.raises(ParameterError):
        QSchedule(B=0.5, eta=0.0, rho=1.0, t=2)
    with pytest.raises(ParameterError):
        QSchedule(B=2.0, eta=1.5, rho=1.0, t=2)
    with pytest.raises(ParameterError):
        QSchedule(B=2.0, eta=0.0, rho=0.5, t=2)
    with pytest.raises(ParameterError):
        QSchedule(B=2.0, eta=0.0, rho=1.0, t=1)
    with pytest.raises(ParameterError):
        # denominator at i = t+1 is non-positive for huge rho
        QSchedule(B=100.0, eta=0.0, rho=50.0, t=2)


def test_qschedule_clamped():
    sched = QSchedule.clamped(B=3.0, eta=0.1, rho=0.0, t=4)
    assert sched.rho == 1.0


def test_default_params():
    g = dumbbell(5, 1.0)  # n=10, m=21
    assert default_boosted_karger_params(g) == (3, 2)
    B, t = default_boosted_fpz_params(g)
    assert B == 3 and t == max(2, math.ceil(math.sqrt(g.m)))


def test_karger_trial_valid_cut():
    g = dumbbell(4, 1.0)
    rng = np.random.default_rng(0)
    cut, stats = karger_trial(g, rng)
    assert 0 < len(cut.side) < g.n
    assert stats.contractions == g.n - 2
    assert stats.edge_samples >= stats.contractions


def test_karger_trial_deterministic():
    g = dumbbell(4, 1.0)
    a, _ = karger_trial(g, np.random.default_rng(5))
    b, _ = karger_trial(g, np.random.default_rng(5))
    assert a.side == b.side and a.weight == b.weight


def test_karger_finds_dumbbell_bridge():
    g = dumbbell(4, 1.0)
    rng = np.random.default_rng(1)
    hits = sum(karger_trial(g, rng)[0].weight == 1.0 for _ in range(400))
    # success probability is at least 2/(n(n-1)) = 1/28; empirically much higher
    assert hits > 30


def test_fpz_valid_and_deterministic():
    g = dumbbell(4, 1.0)
    a, sa = fpz(g, np.random.default_rng(9))
    b, sb = fpz(g, np.random.default_rng(9))
    assert a.side == b.side
    assert (sa.edge_samples, sa.contractions, sa.branch_events) == (
        sb.edge_samples,
        sb.contractions,
        sb.branch_events,
    )


def test_fpz_success_beats_single_karger():
    g = dumbbell(4, 1.0)
    rng = np.random.default_rng(2)
    hits = sum(fpz(g, rng)[0].weight == 1.0 for _ in range(300))
    # one fpz run succeeds with probability ~1/(2 H_8 - 2) ~ 0.29
    assert hits > 0.29 * 300 - 3 * (300 * 0.29 * 0.71) ** 0.5


def test_fpz_branch_events_match_leaf_count_recurrence():
    # every branch event adds one leaf, and the expected number of leaves
    # is prod(1/q_i) = prod(i/(i-2)) = n(n-1)/2, so E[branches] = n(n-1)/2 - 1
    n = 8
    g = build_graph(n, [(u, v, 1.0) for u in range(n) for v in range(u + 1, n)])
    rng = np.random.default_rng(3)
    runs = 400
    samples = np.array([fpz(g, rng)[1].branch_events for _ in range(runs)], dtype=float)
    expected = n * (n - 1) / 2 - 1
    sem = samples.std(ddof=1) / runs**0.5
    assert abs(samples.mean() - expected) <= 4 * sem + 1e-9


def test_boosted_karger_perfect_prediction_near_certain():
    g = dumbbell(5, 1.0)
    pred = perfect_prediction(g, stoer_wagner(g))
    rng = np.random.default_rng(4)
    hits = sum(
        boosted_karger_trial(g, pred, B=1000.0, t=2, rng=rng)[0].weight == 1.0
        for _ in range(200)
    )
    assert hits >= 190


def test_boosted_karger_b1_is_plain():
    # B=1 leaves the weights untouched; the trial still returns a proper cut
    g = dumbbell(4, 1.0)
    pred = Prediction({})
    cut, stats = boosted_karger_trial(g, pred, B=1.0, t=2, rng=np.random.default_rng(6))
    assert 0 < len(cut.side) < g.n
    assert stats.phase_switch_k == 2


def test_boosted_karger_t_equal_n_skips_phase1():
    g = dumbbell(4, 1.0)
    pred = perfect_prediction(g, stoer_wagner(g))
    cut, stats = boosted_karger_trial(g, pred, B=50.0, t=g.n, rng=np.random.default_rng(7))
    assert stats.phase_switch_k == g.n
    assert 0 < len(cut.side) < g.n


def test_boosted_karger_watch_side_survival():
    g = dumbbell(5, 1.0)
    ref = stoer_wagner(g)
    pred = perfect_prediction(g, ref)
    rng = np.random.default_rng(8)
    intact = sum(
        boosted_karger_trial(g, pred, B=1000.0, t=3, rng=rng, watch_side=ref.side)[
            1
        ].phase1_intact
        for _ in range(200)
    )
    assert intact >= 190


def test_boosted_karger_rejects_bad_params():
    g = dumbbell(4, 1.0)
    pred = Prediction({})
    with pytest.raises(ParameterError):
        boosted_karger_trial(g, pred, B=0.0, t=2, rng=np.random.default_rng(0))
    with pytest.raises(ParameterError):
        boosted_karger_trial(g, pred, B=2.0, t=1, rng=np.random.default_rng(0))


def test_boosted_fpz_requires_matching_schedule():
    g = dumbbell(4, 1.0)
    pred = Prediction({})
    sched = QSchedule(B=2.0, eta=0.0, rho=1.0, t=3)
    with pytest.raises(ParameterError):
        boosted_fpz(g, pred, B=2.0, t=4, sched=sched, rng=np.random.default_rng(0))


def test_boosted_fpz_perfect_prediction():
    g = dumbbell(5, 1.0)
    ref = stoer_wagner(g)
    pred = perfect_prediction(g, ref)
    sched = QSchedule(B=float(g.n), eta=0.0, rho=1.0, t=4)
    rng = np.random.default_rng(10)
    hits = sum(
        boosted_fpz(g, pred, B=float(g.n), t=4, sched=sched, rng=rng)[0].weight == 1.0
        for _ in range(200)
    )
    # analytic success lower bound at t=4 is 1/(2 H_4 - 2) ~ 0.46
    assert hits >= 0.46 * 200 - 3 * (200 * 0.46 * 0.54) ** 0.5


def test_boosted_fpz_deterministic():
    g = dumbbell(4, 1.0)
    pred = perfect_prediction(g, stoer_wagner(g))
    sched = QSchedule(B=8.0, eta=0.0, rho=1.0, t=3)
    a, sa = boosted_fpz(g, pred, B=8.0, t=3, sched=sched, rng=np.random.default_rng(11))
    b, sb = boosted_fpz(g, pred, B=8.0, t=3, sched=sched, rng=np.random.default_rng(11))
    assert a.side == b.side
    assert sa.edge_samples == sb.edge_samples


def test_repeat_until_finds_target():
    g = dumbbell(4, 1.0)
    res = repeat_until(lambda rng: karger_trial(g, rng), 1.0, max_trials=500, seed=123)
    assert res.trials is not None and res.trials >= 1
    assert res.best_cut.weight == 1.0


def test_repeat_until_deterministic():
    g = dumbbell(4, 1.0)
    a = repeat_until(lambda rng: karger_trial(g, rng), 1.0, max_trials=500, seed=77)
    b = repeat_until(lambda rng: karger_trial(g, rng), 1.0, max_trials=500, seed=77)
    assert a.trials == b.trials
    assert a.stats.edge_samples == b.stats.edge_samples


def test_repeat_until_not_found():
    g = dumbbell(4, 1.0)
    res = repeat_until(lambda rng: karger_trial(g, rng), 0.5, max_trials=5, seed=1)
    assert res.trials is None
    assert res.best_cut is not None
    assert NOT_FOUND == "NOT_FOUND"


def test_repeat_until_rejects_zero_trials():
    g = dumbbell(4, 1.0)
    with pytest.raises(ParameterError):
        repeat_until(lambda rng: karger_trial(g, rng), 1.0, max_trials=0, seed=1)
