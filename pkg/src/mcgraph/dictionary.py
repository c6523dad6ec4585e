"""Dictionary learning over graph ensembles (K-SVD with OMP) and coefficient clustering."""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field

import numpy as np
from sklearn.cluster import KMeans
from sklearn.exceptions import ConvergenceWarning

from .exceptions import ConfigError, DimensionError, EmptyInput

CENTERINGS = ("column", "mean_column", "none")
RESIDUAL_FLOOR = 1e-12


@dataclass
class EnsembleFeatures:
    """``z x g`` matrix whose column ``l`` profiles graph ``l`` by its top-z scores."""

    matrix: np.ndarray
    raw: np.ndarray
    centering: str

    @property
    def z(self) -> int:
        return self.matrix.shape[0]

    @property
    def graph_count(self) -> int:
        return self.matrix.shape[1]

    @property
    def centered(self) -> bool:
        return self.centering != "none"


def top_scores(scores, z: int) -> np.ndarray:
    """The ``z`` largest scores in descending order, zero-padded to length ``z``."""
    s = np.asarray(scores, dtype=np.float64).ravel()
    # stable sort on -score keeps lower node index first among ties
    order = np.argsort(-s, kind="stable")[:z]
    out = np.zeros(z)
    out[: order.size] = s[order]
    return out


def build_ensemble_matrix(sds_per_graph, z: int, centering: str = "mean_column") -> EnsembleFeatures:
    """Stack each graph's top-``z`` scores as a column and center.

    ``centering='mean_column'`` subtracts the average column (taken across
    graphs) from every column; ``'column'`` subtracts each column's own
    mean instead.
    """
    sds_per_graph = list(sds_per_graph)
    if not sds_per_graph:
        raise EmptyInput("ensemble needs at least one graph")
    if int(z) != z or z < 1:
        raise ConfigError(f"z must be a positive integer, got {z!r}")
    if centering not in CENTERINGS:
        raise ConfigError(f"centering must be one of {CENTERINGS}")
    raw = np.column_stack([top_scores(s, int(z)) for s in sds_per_graph])
    if centering == "column":
        mat = raw - raw.mean(axis=0, keepdims=True)
    elif centering == "mean_column":
        mat = raw - raw.mean(axis=1, keepdims=True)
    else:
        mat = raw.copy()
    return EnsembleFeatures(mat, raw, centering)


def _lstsq(d_sub: np.ndarray, x: np.ndarray) -> np.ndarray:
    return np.linalg.lstsq(d_sub, x, rcond=None)[0]


def omp_encode(d: np.ndarray, signal: np.ndarray, s: int) -> np.ndarray:
    """Orthogonal matching pursuit with at most ``s`` atoms.

    Each step adds the atom most correlated with the residual and refits
    all selected coefficients by least squares.
    """
    d = np.asarray(d, dtype=np.float64)
    x = np.asarray(signal, dtype=np.float64)
    n_atoms = d.shape[1]
    if not 1 <= s <= n_atoms:
        raise DimensionError(f"sparsity must be in [1, {n_atoms}], got {s}")
    coef = np.zeros(n_atoms)
    support: list[int] = []
    residual = x.copy()
    sol = np.zeros(0)
    for _ in range(s):
        if np.linalg.norm(residual) < RESIDUAL_FLOOR:
            break
        corr = np.abs(d.T @ residual)
        corr[support] = -1.0
        k = int(np.argmax(corr))
        if corr[k] <= RESIDUAL_FLOOR:
            break
        support.append(k)
        sol = _lstsq(d[:, support], x)
        residual = x - d[:, support] @ sol
    coef[support] = sol
    return coef


def _refit(d: np.ndarray, x: np.ndarray, coef: np.ndarray) -> np.ndarray:
    support = np.flatnonzero(coef)
    out = np.zeros_like(coef)
    if support.size:
        out[support] = _lstsq(d[:, support], x)
    return out


def sparse_code(d: np.ndarray, zmat: np.ndarray, s: int, previous: np.ndarray | None = None) -> np.ndarray:
    """OMP-encode every column.

    With ``previous`` codes, a column keeps its previous support (refit) when
    that represents it better than the fresh pursuit; this makes each K-SVD
    sweep non-increasing in error.
    """
    codes = np.zeros((d.shape[1], zmat.shape[1]))
    for j in range(zmat.shape[1]):
        x = zmat[:, j]
        c = omp_encode(d, x, s)
        if previous is not None:
            alt = _refit(d, x, previous[:, j])
            if np.linalg.norm(x - d @ alt) < np.linalg.norm(x - d @ c):
                c = alt
        codes[:, j] = c
    return codes


@dataclass
class DictionaryModel:
    atoms: np.ndarray  # (z, K), unit-norm columns
    coefficients: np.ndarray  # (K, g), at most S nonzeros per column
    training_log: list[float]
    sparsity: int
    seed: int
    metadata: dict = field(default_factory=dict)

    @property
    def z(self) -> int:
        return self.atoms.shape[0]

    @property
    def n_atoms(self) -> int:
        return self.atoms.shape[1]

    def reconstruction_error(self, zmat) -> float:
        zmat = zmat.matrix if isinstance(zmat, EnsembleFeatures) else zmat
        return float(np.linalg.norm(zmat - self.atoms @ self.coefficients))

    def encode(self, zmat) -> np.ndarray:
        zmat = zmat.matrix if isinstance(zmat, EnsembleFeatures) else np.asarray(zmat)
        return sparse_code(self.atoms, zmat, self.sparsity)

    def to_dict(self) -> dict:
        return {
            "z": self.z,
            "K": self.n_atoms,
            "S": self.sparsity,
            "atoms": self.atoms.T.tolist(),
            "coefficients": self.coefficients.T.tolist(),
            "training_log": [float(e) for e in self.training_log],
            "seed": self.seed,
            "metadata": self.metadata,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "DictionaryModel":
        atoms = np.asarray(data["atoms"], dtype=np.float64).reshape(data["K"], data["z"]).T
        coefs = np.asarray(data["coefficients"], dtype=np.float64)
        coefs = coefs.reshape(-1, data["K"]).T
        return cls(atoms, coefs, list(data["training_log"]), int(data["S"]), int(data["seed"]),
                   dict(data.get("metadata", {})))

    @classmethod
    def from_json(cls, text: str) -> "DictionaryModel":
        return cls.from_dict(json.loads(text))


def _orient(atom: np.ndarray) -> float:
    k = int(np.argmax(np.abs(atom)))
    return -1.0 if atom[k] < 0 else 1.0


def _initial_atoms(zmat: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    # sample from a content-sorted column order so the choice does not depend
    # on the order graphs were supplied in
    norms = np.linalg.norm(zmat, axis=0)
    canonical = np.lexsort(zmat[::-1])
    candidates = [j for j in canonical if norms[j] > RESIDUAL_FLOOR]
    atoms = np.zeros((zmat.shape[0], k))
    take = min(k, len(candidates))
    picked = rng.choice(len(candidates), size=take, replace=False) if take else []
    for a, idx in enumerate(picked):
        j = candidates[idx]
        atoms[:, a] = zmat[:, j] / norms[j]
    for a in range(take, k):
        v = rng.standard_normal(zmat.shape[0])
        atoms[:, a] = v / np.linalg.norm(v)
    return atoms * np.array([_orient(atoms[:, a]) for a in range(k)])


def _check_invariants(d: np.ndarray, c: np.ndarray, s: int) -> None:
    norms = np.linalg.norm(d, axis=0)
    if not np.allclose(norms, 1.0, atol=1e-10, rtol=0):
        raise AssertionError(f"atom norms drifted from 1: {norms}")
    if c.size and np.count_nonzero(c, axis=0).max() > s:
        raise AssertionError("coefficient column exceeds sparsity")


def ksvd_train(
    zmat,
    k: int = 2,
    s: int = 2,
    iters: int = 20,
    seed: int = 0,
    min_improvement: float = 1e-10,
    callback=None,
) -> DictionaryModel:
    """Learn ``k`` unit-norm atoms and ``s``-sparse codes minimizing ``||Z - DC||_F``.

    Each sweep encodes all columns with OMP, then updates atoms one at a
    time from the rank-1 SVD of the residual restricted to the columns that
    use them. Unused atoms are reset to the worst-represented column.
    ``training_log`` holds the error after every sweep; coefficients are
    re-encoded against the final dictionary. ``callback(sweep, D, C)`` is
    called with copies after each sweep.
    """
    Z = zmat.matrix if isinstance(zmat, EnsembleFeatures) else np.asarray(zmat, dtype=np.float64)
    if Z.ndim != 2 or Z.shape[1] == 0:
        raise EmptyInput("ensemble matrix must be 2-D with at least one column")
    if int(k) != k or k < 1:
        raise ConfigError(f"number of atoms must be a positive integer, got {k!r}")
    if int(s) != s or not 1 <= s <= k:
        raise ConfigError(f"sparsity must satisfy 1 <= S <= K, got S={s}, K={k}")
    if int(iters) != iters or iters < 1:
        raise ConfigError("iters must be a positive integer")
    k, s, iters = int(k), int(s), int(iters)
    g = Z.shape[1]
    rng = np.random.default_rng(seed)

    metadata: dict = {}
    distinct = np.unique(Z.round(12), axis=1).shape[1]
    if k > g and distinct == g:
        metadata["degenerate"] = f"K={k} atoms exceed g={g} distinct columns"

    D = _initial_atoms(Z, k, rng)
    C = np.zeros((k, g))
    log: list[float] = []
    for sweep in range(iters):
        C = sparse_code(D, Z, s, previous=C if sweep else None)
        for a in range(k):
            users = np.flatnonzero(C[a])
            if users.size == 0:
                resid = np.linalg.norm(Z - D @ C, axis=0)
                j = int(np.argmax(resid))
                nz = np.linalg.norm(Z[:, j])
                if nz > RESIDUAL_FLOOR:
                    D[:, a] = Z[:, j] / nz * _orient(Z[:, j])
                continue
            R = Z[:, users] - D @ C[:, users] + np.outer(D[:, a], C[a, users])
            u, sv, vt = np.linalg.svd(R, full_matrices=False)
            atom, coef = u[:, 0], sv[0] * vt[0]
            sign = _orient(atom)
            D[:, a] = atom * sign
            C[a, users] = coef * sign
        _check_invariants(D, C, s)
        log.append(float(np.linalg.norm(Z - D @ C)))
        if callback is not None:
            callback(sweep, D.copy(), C.copy())
        if sweep and log[-2] - log[-1] < min_improvement:
            break

    C = sparse_code(D, Z, s, previous=C)
    _check_invariants(D, C, s)
    metadata["final_error"] = float(np.linalg.norm(Z - D @ C))
    metadata["sweeps"] = len(log)
    return DictionaryModel(D, C, log, s, int(seed), metadata)


def canonical_labels(labels) -> np.ndarray:
    """Relabel clusters in order of first appearance (column 0 gets 0)."""
    mapping: dict[int, int] = {}
    out = np.empty(len(labels), dtype=np.int64)
    for i, lab in enumerate(labels):
        out[i] = mapping.setdefault(int(lab), len(mapping))
    return out


def classify_coefficients(c, clusters: int = 2, seed: int = 0, n_init: int = 100) -> np.ndarray:
    """K-means on coefficient columns; returns one canonical label per graph."""
    c = np.asarray(c, dtype=np.float64)
    if c.ndim != 2:
        raise DimensionError("coefficient matrix must be 2-D (K x g)")
    g = c.shape[1]
    if int(clusters) != clusters or clusters < 1:
        raise ConfigError("clusters must be a positive integer")
    if clusters > g:
        raise DimensionError(f"{clusters} clusters requested for {g} graphs")
    if clusters == 1:
        return np.zeros(g, dtype=np.int64)
    km = KMeans(n_clusters=int(clusters), init="k-means++", n_init=n_init, random_state=seed)
    with warnings.catch_warnings():
        # duplicate coefficient columns make some clusters coincide
        warnings.simplefilter("ignore", ConvergenceWarning)
        labels = km.fit_predict(c.T)
    return canonical_labels(labels)
