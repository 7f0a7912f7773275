"""
fairclust

Closest fair clustering under the pair-counting distance, with fair correlation clustering
and fair consensus clustering built on top, exact small-instance oracles, and the
3-Partition hardness instances.

Usage:
    from fairclust import Clustering, ColorAssignment, fairify

    d = Clustering.from_labels([0, 0, 0, 1])
    colors = ColorAssignment.from_list([0, 0, 1, 1])
    f = fairify(d, colors)
"""

__version__ = "0.1.0"

from .consensus import ConsensusInstance, ConsensusStrategy, consensus_objective, consensus_score, fair_consensus
from .core import Clustering, normalize, pair_distance
from .correlation import Baseline, CorrelationInstance, cc_agreements, cc_cost, fairify_cc, pivot_cc
from .equi import binary_color_groups, block_schedule, fair_equi, fair_power_of_two, multi_gm, surplus_equi
from .errors import FairClusteringError, FileFormatError, InvariantError, ValidationError
from .fairness import (
    ColorAssignment,
    ColorProfile,
    color_histogram,
    deficit_size,
    is_fair,
    is_p_divisible,
    reduced_profile,
    surplus_pdc,
    unfair_clusters,
)
from .general import create_pdc, fair_general, make_pdc_fair
from .logging_config import get_logger, setup_logging
from .pipeline import FairifyMode, fairify

__all__ = [
    "Baseline",
    "Clustering",
    "ColorAssignment",
    "ColorProfile",
    "ConsensusInstance",
    "ConsensusStrategy",
    "CorrelationInstance",
    "FairClusteringError",
    "FairifyMode",
    "FileFormatError",
    "InvariantError",
    "ValidationError",
    "binary_color_groups",
    "block_schedule",
    "cc_agreements",
    "cc_cost",
    "color_histogram",
    "consensus_objective",
    "consensus_score",
    "create_pdc",
    "deficit_size",
    "fair_consensus",
    "fair_equi",
    "fair_general",
    "fair_power_of_two",
    "fairify",
    "fairify_cc",
    "get_logger",
    "is_fair",
    "is_p_divisible",
    "make_pdc_fair",
    "multi_gm",
    "normalize",
    "pair_distance",
    "pivot_cc",
    "reduced_profile",
    "setup_logging",
    "surplus_equi",
    "surplus_pdc",
    "unfair_clusters",
    "__version__",
]
