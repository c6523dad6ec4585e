"""Per-node h-hop walk counts and total walk weights.

Both statistics are built with one sparse matrix-vector product per hop;
``A^h`` and the walk-weight matrices are never formed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import ConfigError, CountOverflow
from .graph import Graph

# integers above this are not exactly representable in float64
EXACT_LIMIT = 2.0**53


@dataclass(frozen=True)
class WalkStatistics:
    max_hops: int
    counts: np.ndarray  # (H, n); row h-1 is a^(h)
    weight_totals: np.ndarray  # (H, n); row h-1 is w^(h)


def _check_hops(max_hops) -> int:
    if int(max_hops) != max_hops or max_hops < 1:
        raise ConfigError(f"max_hops must be a positive integer, got {max_hops!r}")
    return int(max_hops)


def _guard(vec: np.ndarray, h: int, what: str) -> None:
    if vec.size and (not np.all(np.isfinite(vec)) or vec.max() >= EXACT_LIMIT):
        raise CountOverflow(f"{what} at hop {h} exceed 2**53; reduce max_hops")


def walk_statistics(g: Graph, max_hops: int) -> WalkStatistics:
    H = _check_hops(max_hops)
    n = g.node_count
    A, W = g.adjacency, g.weights
    counts = np.zeros((H, n))
    totals = np.zeros((H, n))
    ones = np.ones(n)
    a = A @ ones
    w = W @ ones
    for h in range(1, H + 1):
        _guard(a, h, "walk counts")
        counts[h - 1] = a
        totals[h - 1] = w
        if h < H:
            # w^(h+1) = W a^(h) + A w^(h) uses the previous a
            a, w = A @ a, W @ a + A @ w
    if totals.size and not np.all(np.isfinite(totals)):
        raise CountOverflow("walk weight totals overflowed")
    return WalkStatistics(H, counts, totals)


def walk_counts(g: Graph, max_hops: int) -> np.ndarray:
    """Rows ``a^(1)..a^(H)``: number of h-hop walks leaving each node."""
    return walk_statistics(g, max_hops).counts


def walk_weight_totals(g: Graph, max_hops: int) -> np.ndarray:
    """Rows ``w^(1)..w^(H)``: summed weight of all h-hop walks from each node."""
    return walk_statistics(g, max_hops).weight_totals
