import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mcgraph.exceptions import ConfigError, CountOverflow
from mcgraph.graph import build_graph, degree_vectors
from mcgraph.walks import walk_counts, walk_statistics, walk_weight_totals

import oracles


def test_path_graph_counts():
    a = walk_counts(build_graph([(0, 1), (1, 2)]), 2)
    assert a.tolist() == [[1, 2, 1], [2, 2, 2]]


def test_single_directed_edge():
    a = walk_counts(build_graph([(0, 1)], directed=True), 2)
    assert a.tolist() == [[1, 0], [0, 0]]


def test_empty_graph_is_zero():
    g = build_graph([], node_count=3)
    assert not walk_counts(g, 4).any()
    assert not walk_weight_totals(g, 4).any()


def test_weighted_edge_totals():
    # walks 0-1 (3) and 0-1-0 (6); same from 1
    w = walk_weight_totals(build_graph([(0, 1, 3.0)]), 2)
    assert w.tolist() == [[3, 3], [6, 6]]


def test_unit_weights_scale_counts_by_length():
    g = build_graph([(0, 1), (1, 2)])
    stats = walk_statistics(g, 6)
    for h in range(1, 7):
        assert np.array_equal(stats.weight_totals[h - 1], h * stats.counts[h - 1])


def test_first_hop_is_out_degree():
    g = build_graph([(0, 1), (0, 2), (2, 1), (1, 3)], directed=True)
    assert np.array_equal(walk_counts(g, 1)[0], degree_vectors(g)[1])


def test_bad_hops():
    with pytest.raises(ConfigError):
        walk_counts(build_graph([(0, 1)]), 0)


def test_overflow_is_reported():
    n = 12
    g = build_graph([(i, j) for i in range(n) for j in range(i + 1, n)])
    # 11^h passes 2^53 around h = 16
    walk_counts(g, 15)
    with pytest.raises(CountOverflow):
        walk_counts(g, 20)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 8), st.booleans(), st.integers(0, 2**32 - 1))
def test_matches_brute_force(n, directed, seed):
    rng = np.random.default_rng(seed)
    edges = oracles.random_edges(rng, n, 0.4, directed, weighted=True)
    g = build_graph(edges, directed=directed, node_count=n)
    A, W = oracles.dense(edges, n, directed)
    stats = walk_statistics(g, 5)
    for h, ref in enumerate(oracles.walk_counts_matrix_power(A, 5)):
        assert np.array_equal(stats.counts[h], ref)
    ref_w = oracles.walk_weight_enumeration(A, W, 5)
    assert np.allclose(stats.weight_totals, ref_w, rtol=1e-10, atol=0)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 8), st.integers(0, 2**32 - 1))
def test_monotone_when_every_node_has_an_out_edge(n, seed):
    rng = np.random.default_rng(seed)
    edges = oracles.random_edges(rng, n, 0.3, True, False)
    edges += [(i, (i + 1) % n, 1.0) for i in range(n)]
    a = walk_counts(build_graph(edges, directed=True, node_count=n), 6)
    assert np.all(np.diff(a, axis=0) >= 0)
