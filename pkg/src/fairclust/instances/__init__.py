"""
Instance files and generators
"""
from .files import (
    read_clustering,
    read_consensus,
    read_correlation,
    write_clustering,
    write_consensus,
    write_correlation,
)
from .generators import (
    EQUI,
    GEOMETRIC,
    UNIFORM,
    find_three_partition,
    gen_correlation,
    gen_hardness,
    gen_random,
    gen_random_three_partition,
    hardness_tau,
)
from .models import HardnessInstance

__all__ = [
    "EQUI",
    "GEOMETRIC",
    "UNIFORM",
    "HardnessInstance",
    "find_three_partition",
    "gen_correlation",
    "gen_hardness",
    "gen_random",
    "gen_random_three_partition",
    "hardness_tau",
    "read_clustering",
    "read_consensus",
    "read_correlation",
    "write_clustering",
    "write_consensus",
    "write_correlation",
]
