"""Walkthrough of how node coordinates react to small structural changes."""

from __future__ import annotations

from typing import Callable

import numpy as np

from .datasets import star_of_cliques, star_of_cliques_orbits
from .features import FeatureSpec, assemble
from .graph import Graph, build_graph
from .spectral import mc_gpca

N_CLIQUES = 3
CLIQUE_SIZE = 3


def _coordinates(g: Graph, refs=()) -> np.ndarray:
    spec = FeatureSpec(max_hops=4, centralities=(), references=tuple(refs))
    return mc_gpca(assemble(g, spec), 2).coordinates


def demo_graphs() -> dict[str, Graph]:
    """The symmetric base graph and three perturbed variants."""
    base = star_of_cliques(N_CLIQUES, CLIQUE_SIZE)
    edges = list(base.edges)
    # (1, 2) lies inside the first clique
    removed = [e for e in edges if e[:2] != (1, 2)]
    heavier = [(s, t, 3.0 if (s, t) == (1, 2) else w) for s, t, w in edges]
    # every edge becomes two arcs except hub -> first gateway
    arcs = [(s, t, w) for s, t, w in edges] + [(t, s, w) for s, t, w in edges if (s, t) != (0, 1)]
    n = base.n
    return {
        "symmetric": base,
        "edge (1,2) removed": build_graph(removed, node_count=n),
        "edge (1,2) weight x3": build_graph(heavier, node_count=n),
        "edge (0,1) one-way": build_graph(arcs, directed=True, node_count=n),
    }


def run_demo(emit: Callable[[str], None] = print) -> dict[str, dict[str, np.ndarray]]:
    graphs = demo_graphs()
    results: dict[str, dict[str, np.ndarray]] = {}
    ref = 2  # non-gateway member of the first clique
    for name, g in graphs.items():
        results[name] = {"plain": _coordinates(g), "reference": _coordinates(g, [ref])}

    orbits = star_of_cliques_orbits(N_CLIQUES, CLIQUE_SIZE)
    emit(f"star of {N_CLIQUES} cliques of size {CLIQUE_SIZE}; features: 1..4-hop walk statistics")
    for name, coords in results.items():
        for mode in ("plain", "reference"):
            label = "no reference" if mode == "plain" else f"reference node {ref}"
            emit(f"\n[{name}] {label}")
            for i, (a, b) in enumerate(coords[mode]):
                emit(f"  node {i:2d}: ({a: .6f}, {b: .6f})")
    base = results["symmetric"]
    tied = all(np.allclose(base["plain"][o], base["plain"][o[0]], atol=1e-9) for o in orbits)
    emit(f"\nsymmetric peers share coordinates without references: {tied}")
    spread = max(np.ptp(base["reference"][o], axis=0).max() for o in orbits)
    emit(f"largest coordinate gap among former peers with a reference node: {spread:.6f}")
    for name in list(results)[1:]:
        change = np.abs(np.abs(results[name]["plain"]) - np.abs(base["plain"])).max()
        emit(f"max |coordinate| change after '{name}': {change:.6f}")
    return results
