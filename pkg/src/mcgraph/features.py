"""Multi-centrality feature matrix assembly."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import centrality as cent
from .exceptions import ConfigError, NonFiniteFeature, TooManyReferences
from .graph import METRICS, Graph, degree_vectors, distance_matrix
from .walks import walk_statistics


@dataclass(frozen=True)
class FeatureSpec:
    """Which structural features to extract.

    ``references`` overrides ``reference_count`` with explicit node indices.
    ``strict`` drops feature columns that are not meaningful for the
    graph's type (weighted / directed / disconnected).
    """

    max_hops: int = 20
    centralities: tuple[str, ...] = cent.MEASURES
    reference_count: int = 10
    references: tuple[int, ...] | None = None
    distance_metric: str = "hop"
    distance_direction: str = "to_reference"
    strict: bool = False

    def __post_init__(self):
        if int(self.max_hops) != self.max_hops or self.max_hops < 1:
            raise ConfigError(f"max_hops must be a positive integer, got {self.max_hops!r}")
        unknown = set(self.centralities) - set(cent.MEASURES)
        if unknown:
            raise ConfigError(f"unknown centralities {sorted(unknown)}; choose from {cent.MEASURES}")
        if len(set(self.centralities)) != len(self.centralities):
            raise ConfigError("duplicate centrality names")
        if self.reference_count < 0:
            raise ConfigError("reference_count must be >= 0")
        if self.distance_metric not in METRICS:
            raise ConfigError(f"distance_metric must be one of {METRICS}")
        if self.distance_direction not in ("to_reference", "from_reference"):
            raise ConfigError("distance_direction must be 'to_reference' or 'from_reference'")
        # fixed column order regardless of how the caller listed them
        ordered = tuple(m for m in cent.MEASURES if m in self.centralities)
        object.__setattr__(self, "centralities", ordered)

    @property
    def n_references(self) -> int:
        return len(self.references) if self.references is not None else self.reference_count

    @property
    def n_features(self) -> int:
        return 2 * self.max_hops + len(self.centralities) + self.n_references


@dataclass
class FeatureMatrix:
    matrix: np.ndarray
    column_names: list[str]
    column_norms: np.ndarray
    centered: bool
    node_labels: list[str] = field(default_factory=list)
    feasible: list[bool] = field(default_factory=list)

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape

    def to_csv(self) -> str:
        return matrix_to_csv(self.matrix, self.column_names, self.node_labels)


def matrix_to_csv(matrix: np.ndarray, columns: Sequence[str], labels: Sequence[str]) -> str:
    lines = [",".join(["node", *columns])]
    for label, row in zip(labels, matrix):
        lines.append(",".join([label, *(repr(float(v)) for v in row)]))
    return "\n".join(lines) + "\n"


def select_reference_nodes(g: Graph, r: int) -> list[int]:
    """The ``r`` highest total-degree nodes, ties to the lower index."""
    if r > g.node_count:
        raise TooManyReferences(f"requested {r} reference nodes from a graph with {g.node_count}")
    if r <= 0:
        return []
    _, _, total = degree_vectors(g)
    order = np.lexsort((np.arange(g.node_count), -total))
    return [int(i) for i in order[:r]]


def reference_distance_features(
    g: Graph, refs: Sequence[int], metric: str = "hop", direction: str = "to_reference"
) -> np.ndarray:
    """``(n, r)`` shortest-path distances between each node and each reference.

    Unreachable entries are replaced by twice the largest finite distance in
    their column (1.0 if that maximum is 0).
    """
    refs = list(refs)
    for r in refs:
        if not 0 <= r < g.node_count:
            raise ConfigError(f"reference node {r} out of range")
    if not refs:
        return np.zeros((g.node_count, 0))
    d = distance_matrix(g, metric, sources=refs, reverse=(direction == "to_reference")).T.copy()
    for j in range(d.shape[1]):
        col = d[:, j]
        finite = np.isfinite(col)
        if finite.all():
            continue
        top = col[finite].max() if finite.any() else 0.0
        col[~finite] = 2.0 * top if top > 0 else 1.0
    return d


def normalize_columns(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    norms = np.linalg.norm(x, axis=0)
    safe = np.where(norms > 0, norms, 1.0)
    return x / safe, norms


def center_columns(x: np.ndarray) -> np.ndarray:
    """Subtract the mean row from every row."""
    if x.shape[0] == 0:
        return x.copy()
    return x - x.mean(axis=0, keepdims=True)


def raw_features(g: Graph, spec: FeatureSpec) -> tuple[np.ndarray, list[str], list[bool]]:
    cols: list[np.ndarray] = []
    names: list[str] = []
    feasible: list[bool] = []

    stats = walk_statistics(g, spec.max_hops)
    for h in range(spec.max_hops):
        cols.append(stats.counts[h])
        names.append(f"walk_count_{h + 1}")
        feasible.append(True)
    for h in range(spec.max_hops):
        cols.append(stats.weight_totals[h])
        names.append(f"walk_weight_{h + 1}")
        feasible.append(True)
    for measure in spec.centralities:
        cv = cent.centrality(g, measure)
        cols.append(cv.values)
        names.append(measure)
        feasible.append(cv.feasible)

    if spec.references is not None:
        refs = list(spec.references)
    else:
        refs = select_reference_nodes(g, spec.reference_count)
    dist = reference_distance_features(g, refs, spec.distance_metric, spec.distance_direction)
    dist_ok = cent.is_feasible("distance", g)
    for j, r in enumerate(refs):
        cols.append(dist[:, j])
        names.append(f"dist_{g.labels[r]}")
        feasible.append(dist_ok)

    x = np.column_stack(cols) if cols else np.zeros((g.node_count, 0))
    x = x.reshape(g.node_count, len(cols))
    bad = ~np.isfinite(x)
    if bad.any():
        j = int(np.flatnonzero(bad.any(axis=0))[0])
        raise NonFiniteFeature(f"feature {names[j]!r} has non-finite entries")
    return x, names, feasible


def assemble(g: Graph, spec: FeatureSpec | None = None, center: bool = True) -> FeatureMatrix:
    """Feature matrix with unit-norm columns, optionally mean-centered.

    Column order: walk counts for h = 1..H, walk weight totals for
    h = 1..H, centralities in :data:`~mcgraph.centrality.MEASURES` order,
    then reference distances.
    """
    spec = spec or FeatureSpec()
    if spec.n_references > g.node_count:
        raise TooManyReferences(
            f"requested {spec.n_references} reference nodes from a graph with {g.node_count}"
        )
    x, names, feasible = raw_features(g, spec)
    if spec.strict:
        keep = [j for j, ok in enumerate(feasible) if ok]
        x = x[:, keep]
        names = [names[j] for j in keep]
        feasible = [True] * len(keep)
    x, norms = normalize_columns(x)
    if center:
        x = center_columns(x)
    return FeatureMatrix(x, names, norms, center, list(g.labels), feasible)
