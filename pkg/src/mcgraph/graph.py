"""Immutable weighted graph, edge-list ingestion and shortest paths."""

from __future__ import annotations

import heapq
import math
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components, dijkstra

from .exceptions import EdgeListParseError, GraphError, InvalidWeight, SelfLoopRejected

METRICS = ("hop", "weighted", "inverse")

# relative slack when deciding two weighted path lengths are tied
_TIE_RTOL = 1e-12


@dataclass(frozen=True, eq=False)
class Graph:
    """Directed or undirected graph with nonnegative edge weights.

    ``edges`` holds each collapsed edge once; for undirected graphs the pair
    is stored with ``source < target`` while ``adjacency``/``weights``
    carry both orientations. Build instances with :func:`build_graph` or
    :func:`read_edge_list`.
    """

    node_count: int
    directed: bool
    edges: tuple[tuple[int, int, float], ...]
    labels: tuple[str, ...]
    adjacency: sp.csr_matrix = field(repr=False)
    weights: sp.csr_matrix = field(repr=False)

    @property
    def n(self) -> int:
        return self.node_count

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def is_weighted(self) -> bool:
        return any(w != 1.0 for _, _, w in self.edges)

    def dense_adjacency(self) -> np.ndarray:
        return self.adjacency.toarray()

    def dense_weights(self) -> np.ndarray:
        return self.weights.toarray()

    def neighbors(self, i: int) -> np.ndarray:
        """Nodes connecting to or from ``i`` (sorted, without ``i``)."""
        a = self.adjacency
        out = a.indices[a.indptr[i]:a.indptr[i + 1]]
        if not self.directed:
            return out.copy()
        at = self._transpose
        inn = at.indices[at.indptr[i]:at.indptr[i + 1]]
        return np.union1d(out, inn)

    def neighbor_sets(self) -> list[np.ndarray]:
        return [self.neighbors(i) for i in range(self.node_count)]

    @property
    def _transpose(self) -> sp.csr_matrix:
        cached = self.__dict__.get("_at")
        if cached is None:
            cached = self.adjacency.T.tocsr()
            object.__setattr__(self, "_at", cached)
        return cached

    def symmetric_adjacency(self) -> sp.csr_matrix:
        a = self.adjacency
        if not self.directed:
            return a
        s = ((a + a.T) > 0).astype(np.float64)
        return sp.csr_matrix(s)

    def n_components(self) -> int:
        """Number of weakly connected components."""
        if self.node_count == 0:
            return 0
        k, _ = connected_components(self.adjacency, directed=self.directed, connection="weak")
        return int(k)

    def is_disconnected(self) -> bool:
        return self.n_components() > 1

    def edge_multiset(self) -> list[tuple[str, str, float]]:
        out = []
        for s, t, w in self.edges:
            a, b = self.labels[s], self.labels[t]
            if not self.directed and b < a:
                a, b = b, a
            out.append((a, b, w))
        return sorted(out)

    def to_edge_list(self) -> str:
        lines = [f"{self.labels[s]} {self.labels[t]} {w!r}" for s, t, w in self.edges]
        return "\n".join(lines) + ("\n" if lines else "")


def _freeze(m: sp.csr_matrix) -> sp.csr_matrix:
    for arr in (m.data, m.indices, m.indptr):
        arr.flags.writeable = False
    return m


def build_graph(
    edge_list: Iterable[Sequence],
    directed: bool = False,
    node_count: int | None = None,
    labels: Sequence[str] | None = None,
) -> Graph:
    """Construct a :class:`Graph` from ``(source, target[, weight])`` tuples.

    Missing weights default to 1.0 and repeated edges collapse by summing
    their weights. ``node_count`` overrides the inferred ``1 + max index``.
    """
    collapsed: dict[tuple[int, int], float] = {}
    max_index = -1
    for item in edge_list:
        if len(item) not in (2, 3):
            raise GraphError(f"edge must be (source, target[, weight]), got {item!r}")
        s, t = int(item[0]), int(item[1])
        w = 1.0 if len(item) == 2 or item[2] is None else float(item[2])
        if s < 0 or t < 0:
            raise GraphError(f"negative node index in edge {item!r}")
        if not math.isfinite(w) or w < 0:
            raise InvalidWeight(f"edge ({s}, {t}) has invalid weight {w!r}")
        if s == t:
            raise SelfLoopRejected(f"self-loop on node {s}")
        key = (s, t) if directed or s < t else (t, s)
        collapsed[key] = collapsed.get(key, 0.0) + w
        max_index = max(max_index, s, t)

    n = max_index + 1 if node_count is None else int(node_count)
    if n <= max_index:
        raise GraphError(f"node_count={n} but edges reference node {max_index}")
    if labels is None:
        labels = tuple(str(i) for i in range(n))
    elif len(labels) != n:
        raise GraphError(f"{len(labels)} labels for {n} nodes")

    edges = tuple((s, t, w) for (s, t), w in sorted(collapsed.items()))
    rows = [s for s, _, _ in edges]
    cols = [t for _, t, _ in edges]
    vals = [w for _, _, w in edges]
    if not directed:
        rows, cols = rows + cols, cols + rows
        vals = vals + vals
    rows_a = np.asarray(rows, dtype=np.int64)
    cols_a = np.asarray(cols, dtype=np.int64)
    w_mat = sp.csr_matrix((np.asarray(vals, dtype=np.float64), (rows_a, cols_a)), shape=(n, n))
    a_mat = sp.csr_matrix((np.ones(len(rows_a)), (rows_a, cols_a)), shape=(n, n))
    w_mat.sort_indices()
    a_mat.sort_indices()
    return Graph(n, bool(directed), edges, tuple(labels), _freeze(a_mat), _freeze(w_mat))


def parse_edge_list(lines: Iterable[str], source: str = "<input>") -> tuple[list, list[str]]:
    """Parse ``source target [weight]`` lines into indexed edges and labels.

    Labels are mapped to dense indices in order of first appearance.
    """
    index: dict[str, int] = {}
    edges = []
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise EdgeListParseError(f"{source}:{lineno}: expected 'source target [weight]'")
        ids = []
        for tok in parts[:2]:
            if tok not in index:
                index[tok] = len(index)
            ids.append(index[tok])
        if len(parts) == 3:
            try:
                w = float(parts[2])
            except ValueError:
                raise EdgeListParseError(f"{source}:{lineno}: bad weight {parts[2]!r}") from None
            edges.append((ids[0], ids[1], w))
        else:
            edges.append((ids[0], ids[1]))
    return edges, list(index)


def read_edge_list(path: str | Path, directed: bool = False) -> Graph:
    path = Path(path)
    with open(path, encoding="utf-8") as fh:
        edges, labels = parse_edge_list(fh, source=str(path))
    try:
        return build_graph(edges, directed=directed, node_count=len(labels), labels=labels)
    except GraphError as exc:
        raise type(exc)(f"{path}: {exc}") from None


def write_edge_list(g: Graph, path: str | Path) -> None:
    Path(path).write_text(g.to_edge_list(), encoding="utf-8")


@dataclass(frozen=True)
class PathDistances:
    source: int
    dist: np.ndarray
    path_counts: np.ndarray


def edge_lengths(g: Graph, metric: str = "weighted") -> sp.csr_matrix:
    """CSR matrix whose stored entries are edge lengths under ``metric``."""
    if metric not in METRICS:
        raise ValueError(f"metric must be one of {METRICS}, got {metric!r}")
    if metric == "hop":
        return g.adjacency
    if metric == "weighted":
        return g.weights
    w = g.weights.copy()
    with np.errstate(divide="ignore"):
        w.data = np.where(w.data > 0, 1.0 / w.data, np.inf)
    return w


def default_metric(g: Graph) -> str:
    return "weighted" if g.is_weighted else "hop"


def _sssp(indptr, indices, lengths, n: int, source: int, hop: bool):
    """Single-source shortest paths with path counting.

    Returns ``(dist, sigma, order, preds)`` where ``order`` lists settled
    nodes by nondecreasing distance and ``preds[v]`` the shortest-path
    predecessors of ``v``.
    """
    dist = np.full(n, np.inf)
    sigma = np.zeros(n)
    preds: list[list[int]] = [[] for _ in range(n)]
    order: list[int] = []
    dist[source] = 0.0
    sigma[source] = 1.0
    if hop:
        queue = deque([source])
        while queue:
            u = queue.popleft()
            order.append(u)
            du = dist[u] + 1.0
            for v in indices[indptr[u]:indptr[u + 1]]:
                if dist[v] == np.inf:
                    dist[v] = du
                    queue.append(v)
                if dist[v] == du:
                    sigma[v] += sigma[u]
                    preds[v].append(u)
        return dist, sigma, order, preds

    done = np.zeros(n, dtype=bool)
    heap = [(0.0, source)]
    while heap:
        d, u = heapq.heappop(heap)
        if done[u] or d > dist[u]:
            continue
        done[u] = True
        order.append(u)
        for k in range(indptr[u], indptr[u + 1]):
            v = indices[k]
            if done[v]:
                continue
            nd = d + lengths[k]
            cur = dist[v]
            slack = _TIE_RTOL * max(1.0, abs(nd))
            if nd < cur - slack:
                dist[v] = nd
                sigma[v] = sigma[u]
                preds[v] = [u]
                heapq.heappush(heap, (nd, v))
            elif abs(nd - cur) <= slack:
                sigma[v] += sigma[u]
                preds[v].append(u)
    return dist, sigma, order, preds


def shortest_paths(g: Graph, source: int, metric: str = "hop") -> PathDistances:
    """Distances and shortest-path counts from ``source``.

    ``metric='hop'`` counts edges, ``'weighted'`` uses weights as lengths and
    ``'inverse'`` uses reciprocal weights. Unreachable nodes get ``inf``.
    """
    if not 0 <= source < g.node_count:
        raise GraphError(f"source {source} out of range [0, {g.node_count})")
    m = edge_lengths(g, metric)
    dist, sigma, _, _ = _sssp(m.indptr, m.indices, m.data, g.node_count, source, metric == "hop")
    return PathDistances(source, dist, sigma.astype(np.int64))


def distance_matrix(g: Graph, metric: str = "hop", sources=None, reverse: bool = False) -> np.ndarray:
    """Rows are shortest-path distances from each source (inf if unreachable).

    With ``reverse=True`` row ``k`` holds distances *to* ``sources[k]``.
    """
    m = edge_lengths(g, metric)
    if reverse and g.directed:
        m = m.T.tocsr()
    if g.node_count == 0:
        return np.zeros((0, 0))
    idx = np.arange(g.node_count) if sources is None else np.asarray(sources, dtype=np.int64)
    if idx.size == 0:
        return np.zeros((0, g.node_count))
    return np.atleast_2d(dijkstra(m, directed=True, indices=idx, unweighted=(metric == "hop")))


def degree_vectors(g: Graph) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(in_degree, out_degree, total_degree)`` as integer arrays."""
    a = g.adjacency
    out = np.diff(a.indptr).astype(np.int64)
    inn = np.bincount(a.indices, minlength=g.node_count).astype(np.int64)
    total = inn + out if g.directed else out.copy()
    return inn, out, total
