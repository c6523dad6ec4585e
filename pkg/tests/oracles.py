"""Brute-force reference computations used only by the tests.

Everything here works from dense matrices or explicit path/walk
enumeration so it shares no code path with the package.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np

TIE = 1e-12


def random_edges(rng, n, p, directed, weighted):
    edges = []
    for i, j in itertools.permutations(range(n), 2):
        if not directed and i > j:
            continue
        if rng.random() < p:
            w = float(rng.uniform(0.1, 3.0)) if weighted else 1.0
            edges.append((i, j, w))
    return edges


def dense(edges, n, directed):
    A = np.zeros((n, n))
    W = np.zeros((n, n))
    for s, t, w in edges:
        A[s, t] = 1
        W[s, t] += w
        if not directed:
            A[t, s] = 1
            W[t, s] += w
    return A, W


def walk_counts_matrix_power(A, H):
    n = A.shape[0]
    Ai = A.astype(np.int64)
    return [np.linalg.matrix_power(Ai, h) @ np.ones(n, dtype=np.int64) for h in range(1, H + 1)]


def walk_weight_enumeration(A, W, H):
    """Sum of walk weights over every h-hop walk from each node, by DFS."""
    n = A.shape[0]
    out = np.zeros((H, n))
    nbrs = [np.flatnonzero(A[i]) for i in range(n)]

    def dfs(start, node, depth, acc):
        for j in nbrs[node]:
            w = acc + W[node, j]
            out[depth, start] += w
            if depth + 1 < H:
                dfs(start, j, depth + 1, w)

    for i in range(n):
        dfs(i, i, 0, 0.0)
    return out


def simple_paths(A, s, t):
    n = A.shape[0]
    paths = []

    def dfs(node, path, seen):
        if node == t:
            paths.append(list(path))
            return
        for j in range(n):
            if A[node, j] and j not in seen:
                seen.add(j)
                path.append(j)
                dfs(j, path, seen)
                path.pop()
                seen.discard(j)

    dfs(s, [s], {s})
    return paths


def path_length(path, L):
    return sum(L[a, b] for a, b in zip(path, path[1:]))


def shortest_by_enumeration(A, L, s, t):
    """(distance, list of shortest paths) from s to t, inf/[] if unreachable."""
    if s == t:
        return 0.0, [[s]]
    paths = simple_paths(A, s, t)
    if not paths:
        return math.inf, []
    lengths = [path_length(p, L) for p in paths]
    best = min(lengths)
    slack = TIE * max(1.0, best)
    return best, [p for p, ln in zip(paths, lengths) if ln <= best + slack]


def betweenness_enumeration(A, L, directed):
    n = A.shape[0]
    bc = [Fraction(0)] * n if np.all(L == A) else [0.0] * n
    exact = isinstance(bc[0], Fraction)
    for k in range(n):
        for j in range(n):
            if k == j or (not directed and j < k):
                continue
            _, paths = shortest_by_enumeration(A, L, k, j)
            if not paths:
                continue
            total = len(paths)
            for i in range(n):
                if i in (k, j):
                    continue
                through = sum(1 for p in paths if i in p)
                if through:
                    bc[i] += Fraction(through, total) if exact else through / total
    return np.array([float(b) for b in bc])


def closeness_enumeration(A, L):
    n = A.shape[0]
    out = np.zeros(n)
    for i in range(n):
        total = 0.0
        for j in range(n):
            if j == i:
                continue
            d, _ = shortest_by_enumeration(A, L, i, j)
            if math.isfinite(d):
                total += d
        out[i] = 1.0 / total if total > 0 else 0.0
    return out
