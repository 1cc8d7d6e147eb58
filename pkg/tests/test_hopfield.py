from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import hoproute as h
from hoproute.hopfield import energy_bound, is_fixed_point

from .conftest import random_effective
from .listing_weights import listing_weights


def test_unit_index_examples():
    assert h.unit_index(0, 0, 6) == 0
    assert h.unit_index(2, 1, 6) == 8
    assert h.unit_index(5, 5, 6) == 35


def test_unit_index_bijective():
    seen = {h.unit_index(n, k, 4, 3) for n in range(4) for k in range(3)}
    assert seen == set(range(12))


@pytest.mark.parametrize("node,hop", [(-1, 0), (6, 0), (0, 6), (0, -1)])
def test_unit_index_range(node, hop):
    with pytest.raises(IndexError):
        h.unit_index(node, hop, 6)


def test_set_symmetric_weight():
    w = np.zeros((36, 36))
    h.set_symmetric_weight(w, 0, 7, -3)
    assert w[0, 7] == w[7, 0] == -3
    assert np.count_nonzero(w) == 2
    with pytest.raises(ValueError):
        h.set_symmetric_weight(w, 4, 4, -3)


def test_config_defaults_and_validation():
    cfg = h.SolverConfig()
    assert (cfg.n_nodes, cfg.n_hops, cfg.threshold, cfg.inhib_weight, cfg.sweeps) == (6, 6, 31.0, -3.0, 36)
    assert cfg.n_units == 36
    with pytest.raises(ValueError):
        h.SolverConfig(inhib_weight=1.0)
    with pytest.raises(ValueError):
        h.SolverConfig(sweeps=0)
    with pytest.raises(ValueError):
        h.SolverConfig(n_nodes=1)
    with pytest.raises(ValueError):
        h.SolverConfig(distance_mode="other")


def test_weight_examples(paper_effective):
    sym = (paper_effective + paper_effective.T) / 2
    cfg = h.SolverConfig()
    w = h.build_weights(sym, cfg)
    u = lambda n, k: h.unit_index(n, k, 6)
    assert w[u(0, 0), u(0, 3)] == -3
    assert w[u(0, 2), u(4, 2)] == -3
    assert w[u(0, 0), u(1, 1)] == -sym[0, 1]
    assert w[u(0, 0), u(1, 2)] == 0
    assert np.all(np.diag(w) == 0)


def test_weights_asymmetric_last_write_wins(paper_effective):
    w = h.build_weights(paper_effective, h.SolverConfig())
    u = lambda n, k: h.unit_index(n, k, 6)
    assert w[u(0, 0), u(1, 1)] == -paper_effective[1, 0]
    assert w[u(4, 3), u(2, 2)] == -paper_effective[4, 2]


@pytest.mark.parametrize("n,hops,seed", [(2, 2, 0), (3, 3, 1), (4, 2, 2), (6, 6, 3), (5, 7, 4)])
def test_weights_match_listing(n, hops, seed):
    d = random_effective(seed, n, symmetric=False)
    cfg = h.SolverConfig(n_nodes=n, n_hops=hops, inhib_weight=-2.5)
    np.testing.assert_array_equal(h.build_weights(d, cfg), listing_weights(d, n, hops, -2.5))


def test_weights_dimension_mismatch():
    with pytest.raises(ValueError):
        h.build_weights(np.ones((5, 5)), h.SolverConfig())


def test_init_state():
    s = h.init_state(h.SolverConfig())
    assert s.shape == (36,) and np.all(s == -1)
    assert h.init_state(h.SolverConfig(n_nodes=2)).tolist() == [-1] * 4
    assert np.isfinite(h.lyapunov_energy(s, np.zeros((36, 36)), 31.0))


def test_energy_examples():
    s = np.array([1, -1, 1])
    assert h.lyapunov_energy(s, np.zeros((3, 3)), 0.0) == 0
    w = np.array([[0.0, 1.0], [1.0, 0.0]])
    assert h.lyapunov_energy([1, 1], w, 0.0) == -1
    assert h.lyapunov_energy(-np.ones(36), np.zeros((36, 36)), 31.0) == -1116


def energy_by_loops(s, w, theta):
    n = len(s)
    total = 0.0
    for u in range(n):
        for v in range(n):
            total += w[u][v] * s[u] * s[v]
    return -0.5 * total + theta * sum(s)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32), st.floats(-5, 5))
def test_energy_matches_double_loop(seed, theta):
    rng = h.RngStream(seed)
    w = rng.uniform((8, 8)) - 0.5
    w = w + w.T
    np.fill_diagonal(w, 0)
    s = np.where(rng.uniform(8) < 0.5, -1, 1)
    assert h.lyapunov_energy(s, w, theta) == pytest.approx(energy_by_loops(s, w, theta), abs=1e-12)


def test_strict_threshold():
    w = np.array([[0.0, 32.0], [32.0, 0.0]])
    s, _ = h.async_sweep([-1, 1], w, 31.0, None, order=[0])
    assert s[0] == 1
    w = np.array([[0.0, 31.0], [31.0, 0.0]])
    s, _ = h.async_sweep([1, 1], w, 31.0, None, order=[0])
    assert s[0] == -1


def test_sweep_uses_live_state():
    # unit 0 turns on first, which must push unit 1 off within the same sweep
    w = np.array([[0.0, -5.0], [-5.0, 0.0]])
    s, flips = h.async_sweep([-1, 1], w, -6.0, None, order=[0, 1])
    assert s.tolist() == [1, 1] and flips == 1
    s, flips = h.async_sweep([-1, -1], w, 0.0, None, order=[0, 1])
    assert s.tolist() == [1, -1] and flips == 1


def test_fixed_point_no_flips(paper_instance):
    cfg, _, _, eff = paper_instance
    r = h.run_solver(cfg, eff)
    w = h.build_weights(eff, cfg)
    s, flips = h.async_sweep(r.final_state, w, cfg.threshold, h.RngStream(1))
    assert flips == 0
    np.testing.assert_array_equal(s, r.final_state)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000), st.integers(0, 10_000))
def test_fixed_point_order_independent(instance_seed, order_seed):
    eff = random_effective(instance_seed, 4, symmetric=False)
    cfg = h.SolverConfig(n_nodes=4, threshold=19.0, sweeps=20, seed=instance_seed)
    r = h.run_solver(cfg, eff)
    if not r.converged:
        return
    w = h.build_weights(eff, cfg)
    assert is_fixed_point(r.final_state, w, cfg.threshold)
    _, flips = h.async_sweep(r.final_state, w, cfg.threshold, h.RngStream(order_seed))
    assert flips == 0


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000), st.floats(-40, 40))
def test_single_updates_never_raise_energy(seed, theta):
    eff = random_effective(seed, 4, symmetric=False)
    cfg = h.SolverConfig(n_nodes=4, threshold=theta, sweeps=5, seed=seed)
    w = h.build_weights(eff, cfg)
    energies = [h.lyapunov_energy(h.init_state(cfg), w, theta)]
    r = h.run_solver(cfg, eff, update_energies=energies)
    assert np.all(np.diff(energies) <= 1e-9)
    assert np.all(np.diff(r.energy_trace) <= 1e-9)
    assert np.all(np.abs(energies) <= energy_bound(w, theta) + 1e-9)


def test_zero_weights_stay_off():
    cfg = h.SolverConfig(n_nodes=3, sweeps=1)
    w = np.zeros((9, 9))
    r = h.run_solver(cfg, np.ones((3, 3)), weights=w)
    assert np.all(r.final_state == -1)
    assert r.flips_per_sweep == [0]
    assert r.best_energy == -31 * 9


def test_solver_deterministic(paper_instance):
    cfg, _, _, eff = paper_instance
    a, b = h.run_solver(cfg, eff), h.run_solver(cfg, eff)
    np.testing.assert_array_equal(a.energy_trace, b.energy_trace)
    np.testing.assert_array_equal(a.best_state, b.best_state)
    assert a.flips_per_sweep == b.flips_per_sweep


def test_solver_result_invariants(paper_instance):
    cfg, _, _, eff = paper_instance
    r = h.run_solver(cfg, eff, keep_states=True)
    assert len(r.energy_trace) == 36
    assert r.best_energy == r.energy_trace.min()
    assert r.best_sweep_index == int(np.flatnonzero(r.energy_trace == r.best_energy)[0])
    np.testing.assert_array_equal(r.states_per_sweep[r.best_sweep_index], r.best_state)
    assert r.converged == (r.flips_per_sweep[-1] == 0)


def test_early_stop(paper_instance):
    cfg, _, _, eff = paper_instance
    r = h.run_solver(replace(cfg, early_stop=True), eff)
    assert r.converged
    assert len(r.energy_trace) < 36
    assert r.flips_per_sweep[-1] == 0


def test_restarts_single_equals_solver(paper_instance):
    cfg, _, _, eff = paper_instance
    a, b = h.run_restarts(cfg, eff), h.run_solver(cfg, eff)
    np.testing.assert_array_equal(a.energy_trace, b.energy_trace)
    np.testing.assert_array_equal(a.best_state, b.best_state)


def test_restarts_min_and_determinism():
    eff = random_effective(5, 5, symmetric=False)
    cfg = h.SolverConfig(n_nodes=5, threshold=25.0, restarts=8, seed=3)
    a = h.run_restarts(cfg, eff)
    b = h.run_restarts(replace(cfg, n_jobs=4), eff)
    assert a.restart_index == b.restart_index
    np.testing.assert_array_equal(a.best_state, b.best_state)
    singles = [h.run_solver(cfg, eff, k).best_energy for k in range(8)]
    assert a.best_energy == min(singles)
    assert a.restart_index == singles.index(min(singles))
    assert a.best_energy <= singles[0]
