"""Multi-centrality graph spectral analysis: structural features, MC-GPCA,
structural difference scores and dictionary learning over graph ensembles."""

from .centrality import (
    MEASURES,
    CentralityVector,
    betweenness,
    closeness,
    degree,
    ego_centrality,
    eigenvector_centrality,
    is_feasible,
    lfvc,
)
from .dictionary import (
    DictionaryModel,
    build_ensemble_matrix,
    classify_coefficients,
    ksvd_train,
    omp_encode,
    sparse_code,
)
from .estimators import MCGDL, MCGPCA, GraphFeatureExtractor, StructuralScorer
from .exceptions import *  # noqa: F401,F403
from .features import FeatureMatrix, FeatureSpec, assemble
from .graph import Graph, build_graph, distance_matrix, read_edge_list, shortest_paths, write_edge_list
from .pipeline import learn_ensemble, score_graph
from .spectral import PcaResult, graph_sds_statistic, mc_gpca, sds
from .walks import WalkStatistics, walk_counts, walk_statistics, walk_weight_totals

__version__ = "0.1.0"
