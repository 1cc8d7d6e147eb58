import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import hoproute as h
from hoproute.route import flatten_grid

CFG = h.SolverConfig()


def test_diagonal_route():
    s = h.encode_route(range(6), CFG)
    assert all(s[h.unit_index(k, k, 6)] == 1 for k in range(6))
    route, report = h.extract_route(s, CFG)
    assert route == [0, 1, 2, 3, 4, 5]
    assert report.valid


def test_all_off():
    route, report = h.extract_route(h.init_state(CFG), CFG)
    assert route == []
    assert not report.valid
    assert report.hop_violations == [{"hop": k, "active_count": 0} for k in range(6)]


def test_two_active_at_hop_zero():
    s = h.encode_route(range(6), CFG)
    s[h.unit_index(3, 0, 6)] = 1
    route, report = h.extract_route(s, CFG)
    assert {"hop": 0, "active_count": 2} in report.hop_violations
    assert 3 in report.repeated_nodes
    assert not report.valid
    assert route == [1, 2, 3, 4, 5]


def test_repeated_node_only():
    s = h.encode_route([0, 1, 0, 3, 4, 5], CFG)
    _, report = h.extract_route(s, CFG)
    assert report.hop_violations == []
    assert report.repeated_nodes == [0]
    assert not report.valid


@given(st.permutations(list(range(6))))
def test_encode_extract_roundtrip(perm):
    route, report = h.extract_route(h.encode_route(perm, CFG), CFG)
    assert route == list(perm) and report.valid


def test_validity_matches_constraints():
    # valid iff every hop row and every node column of the grid sums to exactly one
    cfg = h.SolverConfig(n_nodes=3)
    for bits in itertools.product([-1, 1], repeat=9):
        s = np.array(bits)
        g = h.grid_view(s, cfg)
        expected = bool(np.all(g.sum(axis=0) == 1) and np.all(g.sum(axis=1) <= 1))
        assert h.extract_route(s, cfg)[1].valid == expected


def test_route_cost_examples(paper_distances):
    assert h.route_cost([0], paper_distances) == 0
    assert h.route_cost([0, 2], paper_distances) == pytest.approx(5.0, abs=1e-12)
    assert h.route_cost([0, 1, 2], paper_distances) == paper_distances[0, 1] + paper_distances[1, 2]


def test_route_cost_rejects_invalid(paper_distances):
    with pytest.raises(ValueError):
        h.route_cost([0, 1, 0], paper_distances)
    with pytest.raises(ValueError):
        h.route_cost([0, 9], paper_distances)


@given(st.permutations(list(range(6))))
def test_route_cost_reversal(perm, ):
    d = h.euclidean_distance_matrix(h.paper_topology())
    assert h.route_cost(perm, d) == pytest.approx(h.route_cost(perm[::-1], d), abs=1e-12)


def test_grid_view_examples():
    assert not h.grid_view(h.init_state(CFG), CFG).any()
    s = h.init_state(CFG)
    s[h.unit_index(2, 1, 6)] = 1
    g = h.grid_view(s, CFG)
    assert g[2, 1] and g.sum() == 1


@given(st.lists(st.sampled_from([-1, 1]), min_size=12, max_size=12))
def test_grid_roundtrip(bits):
    cfg = h.SolverConfig(n_nodes=4, n_hops=3)
    s = np.array(bits, dtype=np.int8)
    g = h.grid_view(s, cfg)
    assert g.shape == (4, 3)
    np.testing.assert_array_equal(flatten_grid(g), s)
