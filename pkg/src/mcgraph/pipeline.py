"""End-to-end helpers: graph -> features -> coordinates -> scores -> dictionary."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dictionary import DictionaryModel, build_ensemble_matrix, classify_coefficients, ksvd_train
from .features import FeatureMatrix, FeatureSpec, assemble
from .graph import Graph
from .spectral import PcaResult, graph_sds_statistic, mc_gpca, sds


@dataclass
class GraphScores:
    features: FeatureMatrix
    pca: PcaResult
    sds: np.ndarray

    def statistic(self, reducer: str = "mean", k: int | None = None) -> float:
        return graph_sds_statistic(self.sds, reducer, k)


def score_graph(g: Graph, spec: FeatureSpec | None = None, q: int = 2) -> GraphScores:
    x = assemble(g, spec)
    pca = mc_gpca(x, q)
    return GraphScores(x, pca, sds(g, pca))


@dataclass
class EnsembleResult:
    scores: list[GraphScores]
    model: DictionaryModel
    labels: np.ndarray


def learn_ensemble(
    graphs: list[Graph],
    spec: FeatureSpec | None = None,
    q: int = 2,
    z: int = 300,
    k: int = 2,
    s: int = 2,
    iters: int = 20,
    clusters: int = 2,
    seed: int = 0,
    centering: str = "mean_column",
) -> EnsembleResult:
    scores = [score_graph(g, spec, q) for g in graphs]
    zmat = build_ensemble_matrix([sc.sds for sc in scores], z, centering)
    model = ksvd_train(zmat, k, s, iters, seed)
    labels = classify_coefficients(model.coefficients, clusters, seed)
    return EnsembleResult(scores, model, labels)
