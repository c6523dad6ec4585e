"""scikit-learn compatible wrappers.

``GraphFeatureExtractor`` turns a graph into its feature matrix,
``MCGPCA`` projects a feature matrix onto principal components,
``StructuralScorer`` chains both and scores every node, and ``MCGDL``
learns a dictionary over per-graph score profiles and clusters graphs.
All follow the usual ``get_params``/``set_params`` contract, so they can
be cloned and grid-searched.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from . import centrality as cent
from .dictionary import CENTERINGS, build_ensemble_matrix, classify_coefficients, ksvd_train, top_scores
from .exceptions import DimensionError
from .features import FeatureSpec, assemble
from .spectral import REDUCERS, graph_sds_statistic, mc_gpca, sds
from .validation import (
    check_choice,
    check_feature_matrix,
    check_graph,
    check_positive_int,
    check_score_vectors,
)


class GraphFeatureExtractor(TransformerMixin, BaseEstimator):
    def __init__(
        self,
        max_hops=20,
        centralities=cent.MEASURES,
        n_references=10,
        references=None,
        distance_metric="hop",
        distance_direction="to_reference",
        strict=False,
    ):
        self.max_hops = max_hops
        self.centralities = centralities
        self.n_references = n_references
        self.references = references
        self.distance_metric = distance_metric
        self.distance_direction = distance_direction
        self.strict = strict

    def _spec(self) -> FeatureSpec:
        return FeatureSpec(
            max_hops=check_positive_int(self.max_hops, "max_hops"),
            centralities=tuple(self.centralities),
            reference_count=check_positive_int(self.n_references, "n_references", minimum=0),
            references=None if self.references is None else tuple(self.references),
            distance_metric=self.distance_metric,
            distance_direction=self.distance_direction,
            strict=self.strict,
        )

    def fit(self, g, y=None):
        check_graph(g)
        self.spec_ = self._spec()
        self.feature_matrix_ = assemble(g, self.spec_)
        self.feature_names_out_ = np.array(self.feature_matrix_.column_names, dtype=object)
        self.n_features_out_ = len(self.feature_names_out_)
        return self

    def transform(self, g):
        check_is_fitted(self, "spec_")
        fm = assemble(check_graph(g), self.spec_)
        if fm.column_names != list(self.feature_names_out_):
            raise DimensionError("graph yields a different feature set than the fitted one")
        return fm.matrix

    def fit_transform(self, g, y=None):
        return self.fit(g).feature_matrix_.matrix

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "feature_names_out_")
        return self.feature_names_out_.copy()


class MCGPCA(TransformerMixin, BaseEstimator):
    """Principal components of a (centered) multi-centrality feature matrix.

    ``components_`` is ``(n_components, n_features)`` as in scikit-learn;
    ``basis_`` is its transpose.
    """

    def __init__(self, n_components=2):
        self.n_components = n_components

    def fit(self, X, y=None):
        X = check_feature_matrix(X)
        q = check_positive_int(self.n_components, "n_components")
        res = mc_gpca(X, q)
        self.result_ = res
        self.basis_ = res.basis
        self.components_ = res.basis.T
        self.singular_values_ = res.singular_values
        self.explained_variance_ = res.singular_values**2 / X.shape[0]
        self.explained_variance_ratio_ = res.explained_variance_ratio
        self.n_features_in_ = X.shape[1]
        self.embedding_ = res.coordinates
        return self

    def transform(self, X):
        check_is_fitted(self, "basis_")
        X = check_feature_matrix(X)
        if X.shape[1] != self.n_features_in_:
            raise DimensionError(f"expected {self.n_features_in_} features, got {X.shape[1]}")
        return X @ self.basis_

    def fit_transform(self, X, y=None):
        return self.fit(X).embedding_


class StructuralScorer(BaseEstimator):
    """Per-node structural difference scores for a single graph.

    Scoring is transductive: ``fit(g)`` extracts features of ``g``, fits
    MC-GPCA on them and stores ``coordinates_``, ``sds_`` and the reduced
    ``statistic_``.
    """

    def __init__(
        self,
        max_hops=20,
        centralities=cent.MEASURES,
        n_references=10,
        distance_metric="hop",
        strict=False,
        n_components=2,
        reducer="mean",
        top_k=None,
    ):
        self.max_hops = max_hops
        self.centralities = centralities
        self.n_references = n_references
        self.distance_metric = distance_metric
        self.strict = strict
        self.n_components = n_components
        self.reducer = reducer
        self.top_k = top_k

    def fit(self, g, y=None):
        check_graph(g)
        check_choice(self.reducer, "reducer", REDUCERS)
        self.extractor_ = GraphFeatureExtractor(
            max_hops=self.max_hops,
            centralities=self.centralities,
            n_references=self.n_references,
            distance_metric=self.distance_metric,
            strict=self.strict,
        ).fit(g)
        self.pca_ = MCGPCA(self.n_components).fit(self.extractor_.feature_matrix_)
        self.coordinates_ = self.pca_.embedding_
        self.sds_ = sds(g, self.coordinates_)
        self.statistic_ = graph_sds_statistic(self.sds_, self.reducer, self.top_k)
        return self

    def score_samples(self, g):
        return self.fit(g).sds_


class MCGDL(ClusterMixin, BaseEstimator):
    """Dictionary learning over graph ensembles followed by K-means.

    ``fit`` takes one score vector per graph (e.g. ``StructuralScorer.sds_``).
    ``coefficients_`` is ``(n_atoms, n_graphs)``; ``transform`` returns codes
    as ``(n_graphs, n_atoms)``.
    """

    def __init__(
        self,
        n_atoms=2,
        sparsity=2,
        z=300,
        n_iter=20,
        n_clusters=2,
        centering="mean_column",
        n_init=100,
        random_state=0,
    ):
        self.n_atoms = n_atoms
        self.sparsity = sparsity
        self.z = z
        self.n_iter = n_iter
        self.n_clusters = n_clusters
        self.centering = centering
        self.n_init = n_init
        self.random_state = random_state

    def fit(self, scores, y=None):
        scores = check_score_vectors(scores)
        check_choice(self.centering, "centering", CENTERINGS)
        z = check_positive_int(self.z, "z")
        self.ensemble_ = build_ensemble_matrix(scores, z, self.centering)
        self.mean_column_ = self.ensemble_.raw.mean(axis=1)
        self.model_ = ksvd_train(self.ensemble_, self.n_atoms, self.sparsity, self.n_iter, self.random_state)
        self.atoms_ = self.model_.atoms
        self.coefficients_ = self.model_.coefficients
        self.training_log_ = self.model_.training_log
        self.labels_ = classify_coefficients(
            self.coefficients_, self.n_clusters, self.random_state, self.n_init
        )
        self.cluster_centers_ = np.array(
            [self.coefficients_[:, self.labels_ == c].mean(axis=1) for c in range(self.labels_.max() + 1)]
        )
        return self

    def _profiles(self, scores) -> np.ndarray:
        raw = np.column_stack([top_scores(s, self.ensemble_.z) for s in check_score_vectors(scores)])
        if self.centering == "mean_column":
            return raw - self.mean_column_[:, None]
        if self.centering == "column":
            return raw - raw.mean(axis=0, keepdims=True)
        return raw

    def transform(self, scores):
        check_is_fitted(self, "model_")
        return self.model_.encode(self._profiles(scores)).T

    def predict(self, scores):
        codes = self.transform(scores)
        d = ((codes[:, None, :] - self.cluster_centers_[None]) ** 2).sum(axis=2)
        return np.argmin(d, axis=1)

    def fit_predict(self, scores, y=None):
        return self.fit(scores).labels_
