"""Node centrality measures and their feasibility per graph type."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.linalg import eigh
from scipy.sparse.csgraph import connected_components
from scipy.sparse.linalg import eigsh

from .exceptions import AllEigenvaluesZero, NoConvergence, ZeroMatrix
from .graph import Graph, _sssp, default_metric, degree_vectors, distance_matrix, edge_lengths

MEASURES = ("degree", "betweenness", "closeness", "eigenvector", "ego", "lfvc")

# which graph types each feature is meaningful for: (weighted, directed, disconnected)
FEASIBILITY = {
    "walk_count": (True, True, True),
    "walk_weight": (True, True, True),
    "degree": (True, True, True),
    "betweenness": (True, True, False),
    "closeness": (True, True, False),
    "eigenvector": (True, True, True),
    "ego": (True, True, True),
    "lfvc": (True, False, True),
    "distance": (True, True, False),
}

EIG_TOL = 1e-10
EIG_MAX_ITER = 1000
LFVC_TOL = 1e-8
# dense eigensolvers are used up to this many nodes
DENSE_LIMIT = 2000


def is_feasible(feature: str, g: Graph) -> bool:
    weighted, directed, disconnected = FEASIBILITY[feature]
    if g.is_weighted and not weighted:
        return False
    if g.directed and not directed:
        return False
    if g.is_disconnected() and not disconnected:
        return False
    return True


@dataclass(frozen=True)
class CentralityVector:
    measure: str
    values: np.ndarray
    feasible: bool
    eigenvalue: float | None = None


def degree(g: Graph) -> CentralityVector:
    _, _, total = degree_vectors(g)
    return CentralityVector("degree", total.astype(np.float64), is_feasible("degree", g))


def _brandes_hop(g: Graph, batch: int = 256) -> np.ndarray:
    # level-synchronous Brandes over a block of sources at once
    n = g.node_count
    A = g.adjacency
    AT = g._transpose
    bc = np.zeros(n)
    for start in range(0, n, batch):
        src = np.arange(start, min(n, start + batch))
        cols = np.arange(src.size)
        dist = np.full((n, src.size), -1, dtype=np.int64)
        sigma = np.zeros((n, src.size))
        dist[src, cols] = 0
        sigma[src, cols] = 1.0
        frontier = sigma.copy()
        level = 0
        while True:
            nxt = np.asarray(AT @ frontier)
            nxt[dist >= 0] = 0.0
            new = nxt > 0
            if not new.any():
                break
            level += 1
            dist[new] = level
            sigma[new] = nxt[new]
            frontier = nxt
        delta = np.zeros_like(sigma)
        safe = np.where(sigma > 0, sigma, 1.0)
        for lev in range(level, 0, -1):
            t = np.where(dist == lev, (1.0 + delta) / safe, 0.0)
            s = np.asarray(A @ t)
            delta += np.where(dist == lev - 1, sigma * s, 0.0)
        delta[src, cols] = 0.0
        bc += delta.sum(axis=1)
    return bc


def _brandes_weighted(g: Graph, metric: str) -> np.ndarray:
    n = g.node_count
    m = edge_lengths(g, metric)
    bc = np.zeros(n)
    for s in range(n):
        _, sigma, order, preds = _sssp(m.indptr, m.indices, m.data, n, s, hop=False)
        delta = np.zeros(n)
        for w in reversed(order):
            coeff = (1.0 + delta[w]) / sigma[w]
            for v in preds[w]:
                delta[v] += sigma[v] * coeff
            if w != s:
                bc[w] += delta[w]
    return bc


def betweenness(g: Graph, metric: str | None = None) -> CentralityVector:
    """Sum over node pairs of the fraction of shortest paths through each node.

    Undirected graphs count each unordered pair once; directed graphs count
    ordered pairs. Unreachable pairs contribute nothing.
    """
    metric = metric or default_metric(g)
    if g.node_count == 0:
        values = np.zeros(0)
    elif metric == "hop":
        values = _brandes_hop(g)
    else:
        values = _brandes_weighted(g, metric)
    if not g.directed:
        values = values / 2.0
    return CentralityVector("betweenness", values, is_feasible("betweenness", g))


def closeness(g: Graph, metric: str | None = None, batch: int = 512) -> CentralityVector:
    """Reciprocal of the summed distance from each node to every node it reaches.

    Nodes that reach nothing score 0.
    """
    metric = metric or default_metric(g)
    n = g.node_count
    totals = np.zeros(n)
    for start in range(0, n, batch):
        rows = np.arange(start, min(n, start + batch))
        d = distance_matrix(g, metric, sources=rows)
        d[~np.isfinite(d)] = 0.0
        totals[rows] = d.sum(axis=1)
    values = np.zeros(n)
    pos = totals > 0
    values[pos] = 1.0 / totals[pos]
    return CentralityVector("closeness", values, is_feasible("closeness", g))


def _fix_sign(v: np.ndarray) -> np.ndarray:
    k = int(np.argmax(np.abs(v)))
    return -v if v[k] < 0 else v


def _perron_dense(M: np.ndarray, tol: float):
    vals, vecs = np.linalg.eig(M)
    top = vals.real.max()
    window = 1e-8 * max(1.0, abs(top))
    best = None
    for k in np.flatnonzero(np.abs(vals - top) <= window):
        v = np.abs(vecs[:, k].real)
        nv = np.linalg.norm(v)
        if nv == 0:
            continue
        v = v / nv
        lam = float(v @ M @ v)
        res = float(np.linalg.norm(M @ v - lam * v))
        if best is None or res < best[0]:
            best = (res, lam, v)
    return best


def eigenvector_centrality(
    g: Graph, tol: float = EIG_TOL, max_iter: int = EIG_MAX_ITER, fallback: bool = True
) -> CentralityVector:
    """Perron vector of ``W^T`` by power iteration.

    Iterates are L2-normalized and the matrix is shifted by a multiple of the
    identity so bipartite (periodic) graphs still converge. If the iteration
    stalls (defective top eigenvalue, e.g. acyclic digraphs) and ``fallback``
    is set, a dense eigendecomposition is tried on graphs up to
    ``DENSE_LIMIT`` nodes before giving up with :class:`NoConvergence`.
    """
    W = g.weights
    if W.nnz == 0 or not np.any(W.data > 0):
        raise ZeroMatrix("eigenvector centrality needs at least one positively weighted edge")
    M = W.T.tocsr()
    shift = 0.25 * float(np.abs(M).sum(axis=1).max())
    n = g.node_count
    x = np.full(n, 1.0 / np.sqrt(n))
    converged = False
    for _ in range(max_iter):
        y = M @ x + shift * x
        y /= np.linalg.norm(y)
        diff = np.linalg.norm(y - x)
        x = y
        if diff < tol:
            converged = True
            break
    if converged:
        v = _fix_sign(x)
        lam = float(v @ (M @ v))
    else:
        found = None
        if fallback and n <= DENSE_LIMIT:
            found = _perron_dense(M.toarray(), tol)
        if found is None or found[0] >= 10 * tol * max(1.0, abs(found[1])):
            raise NoConvergence(f"power iteration did not converge in {max_iter} iterations")
        _, lam, v = found
        v = _fix_sign(v)
    return CentralityVector("eigenvector", v, is_feasible("eigenvector", g), eigenvalue=lam)


def ego_centrality(g: Graph) -> CentralityVector:
    """Betweenness of each node restricted to its closed neighbourhood.

    For the ego net of ``i`` the matrix ``W_i^2`` masked by non-adjacency
    counts (weighted) two-step connections between non-adjacent members;
    the score sums the reciprocals of its positive entries, over unordered
    pairs for undirected graphs and ordered pairs for directed ones.
    """
    n = g.node_count
    W, A = g.weights, g.adjacency
    values = np.zeros(n)
    for i in range(n):
        nbrs = g.neighbors(i)
        if nbrs.size <= 1:
            continue
        members = np.concatenate(([i], nbrs))
        Wi = W[members][:, members]
        Ai = A[members][:, members]
        two = (Wi @ Wi).tocoo()
        mask = (two.row != two.col) & (two.data > 0)
        if not g.directed:
            mask &= two.row < two.col
        r, c, val = two.row[mask], two.col[mask], two.data[mask]
        if r.size == 0:
            continue
        adjacent = np.asarray(Ai[r, c]).ravel() > 0
        values[i] = float(np.sum(1.0 / val[~adjacent]))
    return CentralityVector("ego", values, is_feasible("ego", g))


def _component_spectrum(L: sp.csr_matrix, count: int):
    size = L.shape[0]
    if size <= DENSE_LIMIT:
        return eigh(L.toarray())
    k = min(count, size - 1)
    scale = float(L.diagonal().max())
    vals, vecs = eigsh(L.tocsc(), k=k, sigma=-1e-3 * scale, which="LM")
    order = np.argsort(vals)
    return vals[order], vecs[:, order]


def fiedler_basis(g: Graph, tol: float = LFVC_TOL) -> tuple[float, np.ndarray]:
    """Smallest nonzero Laplacian eigenvalue of the symmetrized graph and its eigenvectors.

    The eigenvalue is searched per connected component; the lowest-indexed
    component attaining it supplies the eigenvectors. Columns of the returned
    ``(n, m)`` matrix are an orthonormal basis of that eigenspace restricted
    to the component (``m > 1`` only for symmetric graphs).
    """
    W = g.weights
    Ws = ((W + W.T) * 0.5).tocsr() if g.directed else W
    if Ws.nnz == 0 or not np.any(Ws.data > 0):
        raise AllEigenvaluesZero("Laplacian of an edgeless graph has no nonzero eigenvalue")
    deg = np.asarray(Ws.sum(axis=1)).ravel()
    L = (sp.diags(deg) - Ws).tocsr()
    threshold = tol * 2.0 * deg.max()
    window = 1e-9 * 2.0 * deg.max()
    positive = Ws.copy()
    positive.data = (positive.data > 0).astype(np.float64)
    positive.eliminate_zeros()
    ncomp, comp = connected_components(positive, directed=False)

    best = None
    for c in range(ncomp):
        nodes = np.flatnonzero(comp == c)
        if nodes.size < 2:
            continue
        vals, vecs = _component_spectrum(L[nodes][:, nodes], count=8)
        nz = np.flatnonzero(vals > threshold)
        if nz.size == 0:
            continue
        lam = vals[nz[0]]
        if best is None or lam < best[0] - window:
            sel = nz[np.abs(vals[nz] - lam) <= window]
            best = (lam, nodes, vecs[:, sel])
    if best is None:
        raise AllEigenvaluesZero("no Laplacian eigenvalue above tolerance")
    lam, nodes, vecs = best
    Y = np.zeros((g.node_count, vecs.shape[1]))
    Y[nodes] = vecs
    return float(lam), Y


def lfvc(g: Graph, tol: float = LFVC_TOL) -> CentralityVector:
    """Local Fiedler vector centrality with edge directions dropped.

    ``LFVC(i) = sum over neighbours j of (y_i - y_j)^2`` for the Fiedler
    vector ``y``. When the Fiedler eigenvalue is repeated the score is
    averaged over an orthonormal basis of the eigenspace, which keeps it
    independent of the solver's basis choice.
    """
    lam, Y = fiedler_basis(g, tol)
    S = g.symmetric_adjacency().tocoo()
    diff = ((Y[S.row] - Y[S.col]) ** 2).sum(axis=1) / Y.shape[1]
    values = np.bincount(S.row, weights=diff, minlength=g.node_count)
    return CentralityVector("lfvc", values, is_feasible("lfvc", g), eigenvalue=lam)


_DISPATCH = {
    "degree": degree,
    "betweenness": betweenness,
    "closeness": closeness,
    "eigenvector": eigenvector_centrality,
    "ego": ego_centrality,
    "lfvc": lfvc,
}


def centrality(g: Graph, measure: str) -> CentralityVector:
    try:
        fn = _DISPATCH[measure]
    except KeyError:
        raise ValueError(f"unknown centrality {measure!r}; choose from {MEASURES}") from None
    return fn(g)
