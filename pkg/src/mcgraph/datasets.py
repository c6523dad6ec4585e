"""Synthetic graphs for demos and tests."""

from __future__ import annotations

import numpy as np

from .graph import Graph, build_graph


def star_of_cliques(n_cliques: int = 5, clique_size: int = 4, weight: float = 1.0) -> Graph:
    """A hub joined to one "gateway" node of each of ``n_cliques`` identical cliques.

    Node 0 is the hub; clique ``c`` occupies nodes ``1 + c*clique_size`` onward
    and its first node is the gateway.
    """
    edges = []
    for c in range(n_cliques):
        base = 1 + c * clique_size
        edges.append((0, base, weight))
        for a in range(clique_size):
            for b in range(a + 1, clique_size):
                edges.append((base + a, base + b, weight))
    return build_graph(edges, directed=False, node_count=1 + n_cliques * clique_size)


def star_of_cliques_orbits(n_cliques: int = 5, clique_size: int = 4) -> list[list[int]]:
    """Automorphism classes of :func:`star_of_cliques`: hub, gateways, the rest."""
    gateways = [1 + c * clique_size for c in range(n_cliques)]
    rest = [1 + c * clique_size + a for c in range(n_cliques) for a in range(1, clique_size)]
    return [[0], gateways, rest]


def erdos_renyi_edges(n: int, mean_degree: float, rng: np.random.Generator, directed: bool) -> list:
    """Edge list of G(n, p) with ``p`` chosen for the requested mean out-degree."""
    p = mean_degree / (n - 1)
    mask = rng.random((n, n)) < p
    np.fill_diagonal(mask, False)
    if not directed:
        mask = np.triu(mask, 1)
    rows, cols = np.nonzero(mask)
    return [(int(i), int(j)) for i, j in zip(rows, cols)]


def intrusion_ensemble(
    n_graphs: int = 7,
    n_nodes: int = 300,
    attacked: tuple[int, ...] = (3, 4, 5),
    burst: int = 50,
    mean_degree: float = 3.0,
    directed: bool = False,
    seed: int = 2016,
) -> tuple[list[Graph], np.ndarray]:
    """Background random graphs with a DoS-like burst injected into some of them.

    Graph numbers in ``attacked`` are 1-based. In an attacked graph one
    victim node receives ``burst`` new edges from distinct hosts it was not
    already linked with. Returns the graphs and a boolean attack mask.
    """
    rng = np.random.default_rng(seed)
    graphs, truth = [], []
    for number in range(1, n_graphs + 1):
        edges = erdos_renyi_edges(n_nodes, mean_degree, rng, directed)
        is_attack = number in attacked
        if is_attack:
            victim = int(rng.integers(n_nodes))
            linked = {s for s, t in edges if t == victim} | {t for s, t in edges if s == victim}
            pool = np.array([v for v in range(n_nodes) if v != victim and v not in linked])
            for src in rng.choice(pool, size=burst, replace=False):
                edges.append((int(src), victim))
        graphs.append(build_graph(edges, directed=directed, node_count=n_nodes))
        truth.append(is_attack)
    return graphs, np.array(truth)
