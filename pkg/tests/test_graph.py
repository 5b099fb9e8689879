# -*- coding: utf-8 -*-
"""Tests for topologies, support bases, generators and the spectral norm."""

import numpy as np
import pytest
from scipy import stats

from src.errors import DimensionError, InputError
from src.fluctuation.spectral import spectral_norm
from src.graph.generators import is_connected, random_er_graph
from src.graph.topology import build_support_basis, build_topology, respects_support


def test_two_node_support_basis_is_lexicographic():
    topology = build_topology(2, [(1, 2)])
    basis = build_support_basis(topology)

    assert basis.pairs == ((0, 0), (1, 0), (1, 1))
    assert basis.e_count == 3
    assert basis.to_matrix(np.array([1.0, 2.0, 3.0])).tolist() == [[1.0, 0.0], [2.0, 3.0]]


def test_duplicate_edges_are_dropped():
    topology = build_topology(3, [(1, 2), (1, 2), (2, 3)])
    assert topology.edges == ((0, 1), (1, 2))
    assert build_support_basis(topology).e_count == 5


def test_undirected_edges_add_both_directions():
    topology = build_topology(3, [(1, 2)], directed=False)
    assert set(topology.edges) == {(0, 1), (1, 0)}
    assert topology.in_neighbors(0) == (1,)
    assert topology.in_neighbors(1) == (0,)
    assert topology.in_neighbors(2) == ()


def test_support_without_self_loops():
    topology = build_topology(3, [(1, 2), (2, 3), (3, 1)], allow_self_loops=False)
    basis = build_support_basis(topology)
    assert basis.pairs == ((0, 2), (1, 0), (2, 1))
    assert not basis.mask.diagonal().any()


def test_out_of_range_edge_is_rejected():
    with pytest.raises(InputError):
        build_topology(3, [(1, 4)])
    with pytest.raises(InputError):
        build_topology(0, [])


def test_to_matrix_and_from_matrix(cycle3, rng):
    basis = build_support_basis(cycle3)
    coefficients = rng.standard_normal(basis.e_count)
    matrix = basis.to_matrix(coefficients)

    assert respects_support(matrix, basis)
    np.testing.assert_array_equal(basis.from_matrix(matrix), coefficients)
    with pytest.raises(DimensionError):
        basis.to_matrix(coefficients[:-1])


def test_respects_support_detects_off_support_entry(cycle3):
    basis = build_support_basis(cycle3)
    matrix = np.zeros((3, 3))
    matrix[0, 1] = 1.0  # the cycle only has 2 -> 1 via entry (0, 2)
    assert not respects_support(matrix, basis)


def test_adjacency_uses_shift_indexing(cycle3):
    adjacency = cycle3.adjacency()
    assert adjacency[1, 0] == 1.0
    assert adjacency[0, 1] == 0.0
    np.testing.assert_array_equal(adjacency.diagonal(), np.ones(3))
    assert cycle3.cross_edge_count == 3
    assert is_connected(cycle3)


def test_er_graph_is_reproducible():
    first = random_er_graph(12, 0.3, seed=42)
    second = random_er_graph(12, 0.3, seed=42)
    assert first.edges == second.edges


def test_er_graph_rejects_bad_probability():
    with pytest.raises(InputError):
        random_er_graph(5, 1.5)


def test_er_undirected_graph_is_symmetric():
    topology = random_er_graph(10, 0.4, directed=False, seed=1)
    adjacency = topology.adjacency()
    np.testing.assert_array_equal(adjacency, adjacency.T)


@pytest.mark.slow
def test_er_edge_counts_follow_binomial():
    n_nodes, p_edge = 10, 0.3
    pairs = n_nodes * (n_nodes - 1)
    low, high = stats.binom.interval(1 - 1e-7, pairs, p_edge)
    counts = np.array([len(random_er_graph(n_nodes, p_edge, seed=seed).edges) for seed in range(1000)])

    assert np.all((counts >= low) & (counts <= high))
    standard_error = np.sqrt(pairs * p_edge * (1 - p_edge) / counts.size)
    assert abs(counts.mean() - pairs * p_edge) < 4 * standard_error


def test_spectral_norm_matches_svd(rng):
    matrix = rng.standard_normal((8, 8))
    assert spectral_norm(matrix) == pytest.approx(np.linalg.norm(matrix, 2), rel=1e-4)


def test_spectral_norm_edge_cases():
    assert spectral_norm(np.zeros((4, 4))) == 0.0
    assert spectral_norm(np.diag([3.0, -5.0, 1.0])) == pytest.approx(5.0, rel=1e-6)


def test_er_graph_extremes():
    assert random_er_graph(10, 0.0, seed=7).edges == ()
    assert len(random_er_graph(10, 1.0, seed=7).edges) == 90
    assert build_support_basis(random_er_graph(4, 1.0, seed=7)).e_count == 16


def test_connectivity():
    assert not is_connected(build_topology(2, []))
    star = build_topology(4, [(1, 2), (1, 3), (1, 4)])
    assert is_connected(star)


def test_support_without_self_loops_single_edge():
    basis = build_support_basis(build_topology(2, [(1, 2)], allow_self_loops=False))
    assert basis.pairs == ((1, 0),)


def test_spectral_norm_of_seeded_matrix():
    matrix = np.random.default_rng(6).standard_normal((6, 6))
    assert spectral_norm(np.eye(6)) == pytest.approx(1.0)
    assert spectral_norm(matrix) == pytest.approx(np.linalg.svd(matrix, compute_uv=False)[0], rel=1e-7)
