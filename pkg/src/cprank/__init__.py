"""Colijn-Plazzotta ranking of binary tree shapes.

A library and CLI for the bijection between unlabeled binary rooted
trees and the positive integers: exact ranking and unranking, Newick
I/O, exhaustive enumeration with exact probabilities under the uniform
and Yule-Harding random-tree models, seeded samplers, and the
asymptotic laws that tie rank to tree height.
"""

from .trees import (
    LT,
    EQ,
    GT,
    TreeShape,
    ShapeMetrics,
    leaf,
    node,
    compare_shapes,
    metrics,
    caterpillar,
    pseudocaterpillar,
)
from .newick import NewickError, NonBinaryNodeError, parse_newick, to_newick
from .ranking import (
    ExtremalSeqs,
    count_by_height,
    double_log_rank,
    extremal_seqs,
    height_rank_bounds,
    rank,
    unrank,
)
from .enumeration import (
    Model,
    MomentsReport,
    caterpillar_probability,
    catalan_tree_count,
    enumerate_shapes,
    exact_moments,
    labeled_histories,
    labeled_tree_count,
    shape_probability,
    wedderburn,
)
from .sampling import McReport, RngState, height_scaled_samples, monte_carlo, sample_shape
from .asymptotics import (
    CONSTANTS,
    PublishedConstants,
    estimate_gamma,
    estimate_rho,
    loglog_asymptotic,
    mean_rank_asymptotic,
    pi_asymptotic,
    solve_alpha,
    theta_cdf,
)

__version__ = "1.0.0"

__all__ = [
    "LT",
    "EQ",
    "GT",
    "TreeShape",
    "ShapeMetrics",
    "leaf",
    "node",
    "compare_shapes",
    "metrics",
    "caterpillar",
    "pseudocaterpillar",
    "NewickError",
    "NonBinaryNodeError",
    "parse_newick",
    "to_newick",
    "ExtremalSeqs",
    "count_by_height",
    "double_log_rank",
    "extremal_seqs",
    "height_rank_bounds",
    "rank",
    "unrank",
    "Model",
    "MomentsReport",
    "caterpillar_probability",
    "catalan_tree_count",
    "enumerate_shapes",
    "exact_moments",
    "labeled_histories",
    "labeled_tree_count",
    "shape_probability",
    "wedderburn",
    "McReport",
    "RngState",
    "height_scaled_samples",
    "monte_carlo",
    "sample_shape",
    "CONSTANTS",
    "PublishedConstants",
    "estimate_gamma",
    "estimate_rho",
    "loglog_asymptotic",
    "mean_rank_asymptotic",
    "pi_asymptotic",
    "solve_alpha",
    "theta_cdf",
    "__version__",
]
