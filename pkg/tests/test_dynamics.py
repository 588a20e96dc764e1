import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cocoonsim.dynamics import (
    HorizonReached,
    SimulationState,
    SpreadParams,
    apply_emotion_update,
    comment_probability,
    emotion_perturbation,
    initial_spreader_count,
    logistic_density,
    run,
    spread_rate,
    step,
)
from cocoonsim.graph import DegreeStats, GraphError, complete_graph, generate_ba, node_degrees

from conftest import graph_from


class ZeroRng:
    """Every uniform draw is 0, so every positive probability fires."""

    def random(self, size=None):
        return np.zeros(size) if size is not None else 0.0

    def integers(self, high, size=None):
        return 0


def test_spread_rate_examples():
    g = graph_from([0.5] * 3, r_edges=[(0, 1), (1, 2), (2, 0)], faiths=[0.5, 1.0, 0.01])
    stats = DegreeStats(mean_degree=2.0, max_degree=2, histogram={})
    assert spread_rate(0, g, stats, 0.4) == pytest.approx(0.25 * 0.4)
    # k_i = k_max = 50, <k> = 5, f = 1  ->  (a0/2)(1 + 45/50)
    hub = graph_from([0.5] * 51, r_edges=[(0, j) for j in range(1, 51)], faiths=[1.0] + [0.5] * 50)
    stats = DegreeStats(mean_degree=5.0, max_degree=50, histogram={})
    assert spread_rate(0, hub, stats, 0.6) == pytest.approx(0.95 * 0.6)
    # f = 0.01, k = 1, <k> = 5, k_max = 50: raw value negative, clamped
    assert spread_rate(1, graph_from([0.5] * 51, r_edges=[(0, 1)], faiths=[0.5, 0.01] + [0.5] * 49),
                       stats, 0.6) == 0.0


def test_spread_rate_degenerate_graph():
    g = graph_from([0.5, 0.5])
    with pytest.raises(GraphError):
        spread_rate(0, g, DegreeStats(0.0, 0, {}), 0.5)


def test_comment_probability_examples():
    g = graph_from([0.3, 0.3, 0.8, 0.55], faiths=[1.0, 0.0, 0.0, 0.5])
    assert comment_probability(1, 0, g, 0.01) == pytest.approx(0.01)
    # parent 1 has faith 0 and |dp| = 0.5
    assert comment_probability(2, 1, g, 0.01) == pytest.approx(0.0)
    # parent 3: f = 0.5, |dp| = 0.25  ->  theta0 * 0.75 / 2
    assert comment_probability(0, 3, g, 8.62e-3) == pytest.approx(3.2325e-3, rel=1e-12)
    with pytest.raises(ValueError):
        comment_probability(0, 0, g, 0.01)


def test_emotion_perturbation_examples():
    assert emotion_perturbation([(0.5, 0.3)], 0.1) == pytest.approx(0.3)
    assert emotion_perturbation([(0.2, 0.2)], 0.2) == 0.0
    assert emotion_perturbation([], 0.7) == 0.0
    assert emotion_perturbation([], 0.7, area_size=4) == 0.0
    # hidden commenters pull with zero weight
    assert emotion_perturbation([(0.5, 0.3)], 0.1, area_size=3) == pytest.approx(0.1)
    with pytest.raises(ValueError):
        emotion_perturbation([(0.5, 0.3), (0.1, 0.1)], 0.1, area_size=1)


def test_apply_emotion_update_examples():
    g = graph_from([0.5, 0.5], emotions=[0.1, 0.0])
    assert apply_emotion_update(g, 0, emotion_perturbation([(0.5, 0.3)], 0.1)) == pytest.approx(0.4)
    assert apply_emotion_update(g, 1, 0.0) == 0.0


@settings(max_examples=300, deadline=None)
@given(
    st.lists(st.tuples(st.floats(-0.999, 0.999), st.floats(-0.999, 0.999)), min_size=1, max_size=30),
    st.floats(-0.999, 0.999),
    st.integers(0, 30),
)
def test_update_is_convex_combination(contrib, m, hidden):
    g = graph_from([0.5], emotions=[m])
    new = apply_emotion_update(g, 0, emotion_perturbation(contrib, m))
    expected = math.fsum((a + b) / 2 for a, b in contrib) / len(contrib)
    assert new == pytest.approx(expected, abs=1e-12)
    g = graph_from([0.5], emotions=[m])
    new = apply_emotion_update(g, 0, emotion_perturbation(contrib, m, len(contrib) + hidden))
    assert -1 < new < 1


def test_step_hand_trace():
    # R-edge 0-1; node 0 published and already commented on by node 2
    g = graph_from([0.4, 0.4, 0.6], r_edges=[(0, 1)], emotions=[0.6, -0.2, 0.2],
                   faiths=[1.0, 0.5, 0.5], comments=[(2, 0)])
    g.published[0] = True
    params = SpreadParams(alpha0=1.0, theta0=1.0, lam=0.0, ra=0.0, horizon=5)
    state = SimulationState(g, params.ra)
    rep = step(state, params, ZeroRng())
    assert rep.new_spreaders == 1 and g.published[1]
    assert g.has_comment_edge(1, 0) and rep.new_comment_edges == 1
    # cocoon of 1 on 0's post is {2}: new emotion = (m_0 + m_2) / 2
    assert g.emotion[1] == pytest.approx((0.6 + 0.2) / 2)
    assert rep.emotion_updates == 1
    assert state.t == 1


def test_step_saturated_and_zero_rate():
    g = generate_ba(100, 4, seed=3)
    g.published[:] = True
    params = SpreadParams(lam=0.5, ra=0.2)
    rep = step(SimulationState(g, params.ra), params, np.random.default_rng(0))
    assert rep.new_spreaders == 0 and rep.emotion_updates == 0

    g = generate_ba(100, 4, seed=3)
    g.published[:10] = True
    params = SpreadParams(alpha0=0.0, theta0=0.0, ra=0.2)
    rep = step(SimulationState(g, params.ra), params, np.random.default_rng(0))
    assert (rep.new_spreaders, rep.new_comment_edges, rep.emotion_updates) == (0, 0, 0)


def test_step_past_horizon():
    g = generate_ba(30, 4, seed=3)
    state = SimulationState(g, 0.5, t=3)
    with pytest.raises(HorizonReached):
        step(state, SpreadParams(ra=0.5, horizon=3), np.random.default_rng(0))


def test_run_initial_density():
    assert initial_spreader_count(3000, 0.006) == 18
    g = generate_ba(3000, 5, seed=1)
    traj = run(g, SpreadParams(ra=0.85, horizon=3), seed=1)
    assert traj.i[0] == pytest.approx(0.006)
    assert math.isnan(traj.delta_m[0])


def test_run_invariants():
    g = generate_ba(400, 5, seed=2)
    traj = run(g, SpreadParams(ra=0.5), seed=2)
    assert np.all(np.diff(traj.i) >= 0)
    assert np.all(np.abs(g.emotion) < 1)
    assert np.allclose(traj.delta_m[1:], np.diff(traj.mean_m), rtol=0, atol=0)


def test_run_without_rewiring_keeps_topology():
    g = generate_ba(300, 5, seed=2)
    before = g.relationship_edges()
    traj = run(g, SpreadParams(lam=0.0, ra=0.3), seed=2)
    assert g.relationship_edges() == before
    assert traj.rewired.sum() == 0


def test_run_full_accuracy_freezes_emotion():
    g = generate_ba(300, 5, seed=2)
    traj = run(g, SpreadParams(ra=1.0), seed=2)
    assert np.all(traj.mean_m == traj.mean_m[0])
    assert traj.rewired.sum() == 0 and traj.emotion_updates.sum() == 0


def test_run_deterministic():
    a = run(generate_ba(300, 5, seed=2), SpreadParams(ra=0.5), seed=9)
    b = run(generate_ba(300, 5, seed=2), SpreadParams(ra=0.5), seed=9)
    for col in ("i", "mean_m", "new_comments", "rewired"):
        assert np.array_equal(getattr(a, col), getattr(b, col))


def test_run_rejects_empty_seed_set():
    with pytest.raises(ValueError):
        run(generate_ba(100, 4, seed=0), SpreadParams(i0=0.005, ra=0.5), seed=0)


def test_run_stops_after_quiet_saturation():
    g = complete_graph(30, seed=1)
    traj = run(g, SpreadParams(alpha0=1.0, lam=0.0, i0=0.1, ra=0.5, horizon=500), seed=1)
    assert traj.i[-1] == 1.0
    assert len(traj) < 500
    assert np.all(traj.i[-6:] == 1.0)


def test_logistic_density_examples():
    assert logistic_density(0, 0.006, 0.1) == pytest.approx(0.006)
    assert logistic_density(1e4, 0.006, 0.1) > 0.999
    t_mid = math.log((1 - 0.006) / 0.006) / 0.1
    assert t_mid == pytest.approx(51.1, abs=0.05)
    assert logistic_density(t_mid, 0.006, 0.1) == pytest.approx(0.5, abs=1e-12)


def test_logistic_matches_ode():
    # independent check: forward-Euler integration of di/dt = r i (1 - i)
    r, i0, dt = 0.2, 0.01, 1e-4
    i, t = i0, 0.0
    while t < 30 - 1e-12:
        i += dt * r * i * (1 - i)
        t += dt
    assert logistic_density(30, i0, r) == pytest.approx(i, abs=1e-4)


def test_mean_field_small():
    f = 0.5
    curves = []
    for seed in range(20):
        g = complete_graph(100, seed=seed)
        g.faith[:] = f
        curves.append(run(g, SpreadParams(alpha0=0.6, lam=0.0, i0=0.05, ra=0.5, horizon=120), seed=seed).i)
    length = max(map(len, curves))
    mean = np.mean([np.pad(c, (0, length - len(c)), mode="edge") for c in curves], axis=0)
    # degree term vanishes on a complete graph, so the rate is alpha0 * f / 2
    model = logistic_density(np.arange(length), 0.05, 0.25 * 0.6 * 100 / 99)
    assert np.sqrt(np.mean((mean - model) ** 2)) < 0.08


def test_cocoon_normaliser_path():
    # same draws, different normaliser: visible-only averaging pulls at least as hard
    area = run(generate_ba(300, 5, seed=6), SpreadParams(ra=0.5), seed=6)
    vis = run(generate_ba(300, 5, seed=6), SpreadParams(ra=0.5, perturbation_norm="cocoon"), seed=6)
    assert np.array_equal(area.i, vis.i)
    assert np.array_equal(area.emotion_updates, vis.emotion_updates)
    assert not np.array_equal(area.mean_m, vis.mean_m)
    with pytest.raises(ValueError):
        SpreadParams(perturbation_norm="other")
