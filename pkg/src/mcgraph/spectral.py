"""Principal components of a feature matrix and per-node structural difference scores."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import DimensionError, EmptyInput
from .features import FeatureMatrix
from .graph import Graph

REDUCERS = ("mean", "max", "top_k_mean")


@dataclass(frozen=True)
class PcaResult:
    basis: np.ndarray  # (p, q), orthonormal columns
    singular_values: np.ndarray  # (q,)
    coordinates: np.ndarray  # (n, q)
    explained_variance_ratio: np.ndarray  # (q,)

    @property
    def n_components(self) -> int:
        return self.basis.shape[1]


def _complete_basis(v: np.ndarray, p: int) -> np.ndarray:
    """Extend orthonormal columns ``v`` to a full ``p x p`` orthonormal basis."""
    q, _ = np.linalg.qr(np.hstack([v, np.eye(p)]))
    q = q[:, :p]
    # the leading block of a Householder QR spans v; keep v itself there
    q[:, : v.shape[1]] = v
    return q


def sign_convention(basis: np.ndarray) -> np.ndarray:
    """Flip columns so each one's largest-magnitude entry is positive."""
    basis = basis.copy()
    if basis.size == 0:
        return basis
    idx = np.argmax(np.abs(basis), axis=0)
    signs = np.sign(basis[idx, np.arange(basis.shape[1])])
    signs[signs == 0] = 1.0
    return basis * signs


def mc_gpca(x, q: int = 2) -> PcaResult:
    """Project a centered feature matrix onto its top-``q`` right singular vectors.

    ``x`` may be a :class:`FeatureMatrix` or a 2-D array. When ``q`` exceeds
    the number of available singular vectors, the basis is completed
    deterministically and the extra singular values are 0.
    """
    mat = x.matrix if isinstance(x, FeatureMatrix) else np.asarray(x, dtype=np.float64)
    if mat.ndim != 2:
        raise DimensionError(f"feature matrix must be 2-D, got shape {mat.shape}")
    n, p = mat.shape
    if int(q) != q or q < 1:
        raise DimensionError(f"q must be a positive integer, got {q!r}")
    if q > p:
        raise DimensionError(f"q={q} exceeds the number of features p={p}")
    q = int(q)
    if n == 0:
        basis = np.eye(p)[:, :q]
        return PcaResult(basis, np.zeros(q), np.zeros((0, q)), np.zeros(q))

    _, s, vt = np.linalg.svd(mat, full_matrices=False)
    v = vt.T
    if v.shape[1] < q:
        v = _complete_basis(v, p)
        s = np.concatenate([s, np.zeros(p - s.size)])
    basis = sign_convention(v[:, :q])
    sv = s[:q]
    total = float(np.sum(s**2))
    ratio = sv**2 / total if total > 0 else np.zeros(q)
    return PcaResult(basis, sv, mat @ basis, ratio)


def sds(g: Graph, pca) -> np.ndarray:
    """Structural difference score of every node.

    Summed squared distance between a node's coordinates and those of its
    in- and out-neighbours, divided by ``degree + 1``.
    """
    y = pca.coordinates if isinstance(pca, PcaResult) else np.asarray(pca, dtype=np.float64)
    if y.ndim == 1:
        y = y[:, None]
    if y.shape[0] != g.node_count:
        raise DimensionError(f"{y.shape[0]} coordinate rows for a graph with {g.node_count} nodes")
    S = g.symmetric_adjacency().tocoo()
    sq = ((y[S.row] - y[S.col]) ** 2).sum(axis=1)
    numer = np.bincount(S.row, weights=sq, minlength=g.node_count)
    deg = np.bincount(S.row, minlength=g.node_count)
    return numer / (deg + 1.0)


def graph_sds_statistic(scores, reducer: str = "mean", k: int | None = None) -> float:
    """Reduce per-node scores to a single graph-level number."""
    scores = np.asarray(scores, dtype=np.float64)
    if scores.size == 0:
        raise EmptyInput("cannot summarize an empty score vector")
    if reducer == "mean":
        return float(scores.mean())
    if reducer == "max":
        return float(scores.max())
    if reducer == "top_k_mean":
        if k is None or k < 1:
            raise DimensionError("top_k_mean needs k >= 1")
        top = np.sort(scores)[::-1][: int(k)]
        return float(top.mean())
    raise ValueError(f"unknown reducer {reducer!r}; choose from {REDUCERS}")
