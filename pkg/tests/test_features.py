import numpy as np
import pytest

from mcgraph.centrality import MEASURES
from mcgraph.datasets import star_of_cliques, star_of_cliques_orbits
from mcgraph.exceptions import ConfigError, TooManyReferences
from mcgraph.features import (
    FeatureSpec,
    assemble,
    center_columns,
    reference_distance_features,
    select_reference_nodes,
)
from mcgraph.graph import build_graph

import oracles


def test_select_reference_nodes():
    star = build_graph([(0, 1), (0, 2), (0, 3), (0, 4)])
    assert select_reference_nodes(star, 1) == [0]
    k3 = build_graph([(0, 1), (1, 2), (0, 2)])
    assert select_reference_nodes(k3, 2) == [0, 1]
    assert select_reference_nodes(k3, 0) == []
    with pytest.raises(TooManyReferences):
        select_reference_nodes(k3, 4)


def test_reference_breaks_star_of_cliques_symmetry():
    g = star_of_cliques()
    ref = 2  # a non-gateway member of clique 0
    d = reference_distance_features(g, [ref])[:, 0]
    assert d[ref] == 0
    # same-clique peers of the reference are closer than their images elsewhere
    for a in (3, 4):
        assert d[a] < d[a + 4]
    assert d[1] < d[5]


def test_unreachable_distance_is_capped():
    g = build_graph([(0, 1), (1, 2), (3, 4)])
    d = reference_distance_features(g, [0])[:, 0]
    assert d.tolist() == [0, 1, 2, 4, 4]


def test_distance_direction():
    g = build_graph([(0, 1), (1, 2)], directed=True)
    to_ref = reference_distance_features(g, [2])[:, 0]
    assert to_ref.tolist() == [2, 1, 0]
    from_ref = reference_distance_features(g, [0], direction="from_reference")[:, 0]
    assert from_ref.tolist() == [0, 1, 2]


def test_full_configuration_has_56_columns():
    rng = np.random.default_rng(3)
    edges = oracles.random_edges(rng, 25, 0.15, True, False)
    g = build_graph(edges, directed=True, node_count=25)
    x = assemble(g, FeatureSpec(max_hops=20, centralities=MEASURES, reference_count=10))
    assert x.shape == (25, 56)
    assert FeatureSpec().n_features == 56


def test_empty_graph_degree_only():
    g = build_graph([], node_count=4)
    x = assemble(g, FeatureSpec(max_hops=1, centralities=("degree",), reference_count=0))
    assert x.shape == (4, 3)
    assert not x.matrix.any()


@pytest.mark.parametrize("seed", range(8))
def test_normalization_and_centering(seed):
    rng = np.random.default_rng(seed)
    edges = oracles.random_edges(rng, 12, 0.25, bool(seed % 2), bool(seed % 3))
    g = build_graph(edges, directed=bool(seed % 2), node_count=12)
    spec = FeatureSpec(max_hops=4, reference_count=2)
    raw = assemble(g, spec, center=False)
    norms = np.linalg.norm(raw.matrix, axis=0)
    assert np.all((np.abs(norms - 1) < 1e-12) | (norms == 0))
    x = assemble(g, spec)
    assert x.shape[1] == spec.n_features
    assert np.allclose(x.matrix.sum(axis=0), 0, atol=1e-9)
    assert np.allclose(center_columns(x.matrix), x.matrix, atol=1e-12, rtol=0)
    assert np.allclose(x.matrix, raw.matrix - raw.matrix.mean(axis=0))


def test_column_order_and_names():
    spec = FeatureSpec(max_hops=2, centralities=("lfvc", "degree"), reference_count=1)
    assert spec.centralities == ("degree", "lfvc")
    x = assemble(build_graph([(0, 1), (1, 2)]), spec)
    assert x.column_names == ["walk_count_1", "walk_count_2", "walk_weight_1", "walk_weight_2",
                              "degree", "lfvc", "dist_1"]


def test_strict_mode_drops_infeasible_columns():
    g = build_graph([(0, 1), (1, 2), (3, 4)])
    spec = FeatureSpec(max_hops=1, reference_count=1)
    assert assemble(g, spec).shape[1] == 2 + 6 + 1
    strict = assemble(g, FeatureSpec(max_hops=1, reference_count=1, strict=True))
    assert "betweenness" not in strict.column_names
    assert "closeness" not in strict.column_names
    assert not any(c.startswith("dist_") for c in strict.column_names)


def test_spec_validation():
    with pytest.raises(ConfigError):
        FeatureSpec(max_hops=0)
    with pytest.raises(ConfigError):
        FeatureSpec(centralities=("pagerank",))
    with pytest.raises(ConfigError):
        FeatureSpec(distance_metric="manhattan")


def test_equivalent_nodes_share_rows():
    g = star_of_cliques()
    x = assemble(g, FeatureSpec(max_hops=6, reference_count=0)).matrix
    for orbit in star_of_cliques_orbits():
        assert np.allclose(x[orbit], x[orbit[0]], atol=1e-9, rtol=0)


def test_csv_export():
    x = assemble(build_graph([(0, 1)]), FeatureSpec(max_hops=1, centralities=("degree",), reference_count=0))
    lines = x.to_csv().splitlines()
    assert lines[0] == "node,walk_count_1,walk_weight_1,degree"
    assert lines[1].startswith("0,")
