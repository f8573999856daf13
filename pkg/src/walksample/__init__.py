"""Random-walk sampling of directed graphs with bias-corrected estimators.

The package covers one workflow end to end: ingest or generate a directed
graph, explore it with a budgeted walker that can only see out-edges of
visited nodes, and estimate global properties (degree distributions, node
count, degree-ratio average, reciprocation share) from the walk alone,
with exact ground truth and error metrics alongside.
"""

from ._kernels import ACCELERATED
from .chains import (ChainMatrix, build_chain_matrix, mhrw_edge_transition,
                     rwwj_edge_transition, stationary_distribution)
from .distribution import Distribution
from .estimate import (EstimateReport, NodalFunction, capture_recapture_order,
                       cross_collision_order, mh_degree_distribution, mh_mean,
                       mutual_proportion_estimate, mutual_proportion_mhrw,
                       mutual_proportion_rwwj, ratio_average_estimate,
                       rw_degree_distribution, rw_ratio_estimate)
from .experiment import (PROPERTIES, ExperimentConfig, cmd_estimate,
                         cmd_evaluate, cmd_sample, cmd_stats, derive_split_seed,
                         derive_walk_seed, load_graph, run_experiment)
from .generate import GenSpec, generate, parse_gen_spec, symmetrize
from .graph import (DirectedGraph, EdgeListParseError, RatioAverage,
                    load_edge_list)
from .metrics import kl_divergence, ks_d_statistic, rrmse, total_variation
from .walks import (METHODS, SamplerConfig, WalkSample, load_trace,
                    mhrw_sample, rwwj_sample, sample, save_trace, split_halves)

__version__ = "0.1.0"

__all__ = [
    "ACCELERATED",
    "ChainMatrix",
    "DirectedGraph",
    "Distribution",
    "EdgeListParseError",
    "EstimateReport",
    "ExperimentConfig",
    "GenSpec",
    "METHODS",
    "NodalFunction",
    "PROPERTIES",
    "RatioAverage",
    "SamplerConfig",
    "WalkSample",
    "build_chain_matrix",
    "capture_recapture_order",
    "cmd_estimate",
    "cmd_evaluate",
    "cmd_sample",
    "cmd_stats",
    "cross_collision_order",
    "derive_split_seed",
    "derive_walk_seed",
    "generate",
    "kl_divergence",
    "ks_d_statistic",
    "load_edge_list",
    "load_graph",
    "load_trace",
    "mh_degree_distribution",
    "mh_mean",
    "mhrw_edge_transition",
    "mhrw_sample",
    "mutual_proportion_estimate",
    "mutual_proportion_mhrw",
    "mutual_proportion_rwwj",
    "parse_gen_spec",
    "ratio_average_estimate",
    "rrmse",
    "run_experiment",
    "rw_degree_distribution",
    "rw_ratio_estimate",
    "rwwj_edge_transition",
    "rwwj_sample",
    "sample",
    "save_trace",
    "split_halves",
    "stationary_distribution",
    "symmetrize",
    "total_variation",
    "__version__",
]
