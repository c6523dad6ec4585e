"""Input checks shared by the estimators and the CLI."""

from __future__ import annotations

import numbers

import numpy as np
from sklearn.utils.validation import check_array

from .exceptions import ConfigError
from .features import FeatureMatrix
from .graph import Graph


def check_graph(g) -> Graph:
    if not isinstance(g, Graph):
        raise TypeError(f"expected a Graph, got {type(g).__name__}")
    return g


def check_graphs(graphs) -> list[Graph]:
    graphs = list(graphs)
    if not graphs:
        raise ConfigError("need at least one graph")
    return [check_graph(g) for g in graphs]


def check_positive_int(value, name: str, minimum: int = 1) -> int:
    if isinstance(value, bool) or not isinstance(value, numbers.Integral) or value < minimum:
        raise ConfigError(f"{name} must be an integer >= {minimum}, got {value!r}")
    return int(value)


def check_choice(value, name: str, choices) -> str:
    if value not in choices:
        raise ConfigError(f"{name} must be one of {tuple(choices)}, got {value!r}")
    return value


def check_feature_matrix(x) -> np.ndarray:
    """2-D finite float array from a FeatureMatrix or array-like."""
    if isinstance(x, FeatureMatrix):
        x = x.matrix
    return check_array(x, dtype=np.float64, ensure_min_samples=1, ensure_min_features=1)


def check_score_vectors(scores) -> list[np.ndarray]:
    out = []
    for s in scores:
        arr = np.asarray(s, dtype=np.float64).ravel()
        if not np.all(np.isfinite(arr)):
            raise ConfigError("score vectors must be finite")
        out.append(arr)
    if not out:
        raise ConfigError("need at least one score vector")
    return out
