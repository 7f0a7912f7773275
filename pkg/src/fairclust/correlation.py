"""
Fair correlation clustering on complete signed graphs.

Only the "+" edges are stored; every other pair is a "−" edge. The disagreement cost of a
clustering counts "+" edges between clusters and "−" edges inside clusters.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import FrozenSet, Iterable, List, Optional, Set, Tuple, Union

import numpy as np

from .config import DEFAULT_SEED
from .core import Clustering, pairs_within
from .errors import ValidationError
from .fairness import ColorAssignment, check_consistent
from .pipeline import FairifyMode, fairify

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


@dataclass(frozen=True)
class CorrelationInstance:
    n: int
    plus_edges: FrozenSet[Edge]

    def __post_init__(self):
        if self.n < 0:
            raise ValidationError(f"number of nodes must be non-negative, got {self.n}")
        edges = frozenset((int(u), int(v)) for u, v in self.plus_edges)
        for u, v in edges:
            if u == v:
                raise ValidationError(f"self-loop on node {u}")
            if u > v:
                raise ValidationError(f"edge ({u}, {v}) must be stored with u < v")
            if u < 0 or v >= self.n:
                raise ValidationError(f"edge ({u}, {v}) leaves the node range 0..{self.n - 1}")
        object.__setattr__(self, "plus_edges", edges)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> "CorrelationInstance":
        """Build from "+" pairs in any orientation; repeated pairs collapse."""
        ordered = []
        for u, v in edges:
            if u == v:
                raise ValidationError(f"self-loop on node {u}")
            ordered.append((min(u, v), max(u, v)))
        return cls(n, frozenset(ordered))

    @cached_property
    def edge_array(self) -> np.ndarray:
        """"+" edges as a sorted (E, 2) array."""
        if not self.plus_edges:
            return np.zeros((0, 2), dtype=np.int64)
        return np.array(sorted(self.plus_edges), dtype=np.int64)

    @cached_property
    def neighbors(self) -> List[Set[int]]:
        adjacency: List[Set[int]] = [set() for _ in range(self.n)]
        for u, v in self.plus_edges:
            adjacency[u].add(v)
            adjacency[v].add(u)
        return adjacency

    def is_plus(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.plus_edges

    @property
    def total_pairs(self) -> int:
        return self.n * (self.n - 1) // 2


def _check_points(inst: CorrelationInstance, c: Clustering) -> None:
    if c.n != inst.n:
        raise ValidationError(f"clustering covers {c.n} points, instance has {inst.n} nodes")


def _intra_plus(inst: CorrelationInstance, c: Clustering) -> int:
    edges = inst.edge_array
    if edges.size == 0:
        return 0
    return int((c.labels[edges[:, 0]] == c.labels[edges[:, 1]]).sum())


def cc_cost(inst: CorrelationInstance, c: Clustering) -> int:
    """"+" edges across clusters plus "−" pairs inside clusters."""
    _check_points(inst, c)
    intra_plus = _intra_plus(inst, c)
    inter_plus = len(inst.plus_edges) - intra_plus
    intra_minus = pairs_within(c.sizes) - intra_plus
    return inter_plus + intra_minus


def cc_agreements(inst: CorrelationInstance, c: Clustering) -> int:
    """"+" edges inside clusters plus "−" pairs across clusters."""
    _check_points(inst, c)
    edges = inst.edge_array
    if edges.size == 0:
        intra_plus = inter_plus = 0
    else:
        same = c.labels[edges[:, 0]] == c.labels[edges[:, 1]]
        intra_plus = int(same.sum())
        inter_plus = int((~same).sum())
    inter_pairs = inst.total_pairs - pairs_within(c.sizes)
    return intra_plus + (inter_pairs - inter_plus)


def pivot_cc(inst: CorrelationInstance, seed: Optional[int] = None) -> Clustering:
    """
    Randomized pivot: take a uniformly random unclustered node, cluster it with its
    unclustered "+" neighbors, repeat. Deterministic for a given seed.
    """
    rng = np.random.default_rng(DEFAULT_SEED if seed is None else seed)
    labels = np.full(inst.n, -1, dtype=np.int64)
    current = 0
    for pivot in rng.permutation(inst.n).tolist():
        if labels[pivot] >= 0:
            continue
        labels[pivot] = current
        for neighbor in inst.neighbors[pivot]:
            if labels[neighbor] < 0:
                labels[neighbor] = current
        current += 1
    return Clustering(labels)


class Baseline(str, Enum):
    PIVOT = "pivot"
    EXACT = "exact"
    PROVIDED = "provided"


def baseline_clustering(
    inst: CorrelationInstance,
    baseline: Union[Baseline, str, Clustering] = Baseline.PIVOT,
    seed: Optional[int] = None,
) -> Clustering:
    """The unconstrained clustering fairify_cc starts from."""
    if isinstance(baseline, Clustering):
        _check_points(inst, baseline)
        return baseline
    baseline = Baseline(baseline)
    if baseline is Baseline.PIVOT:
        return pivot_cc(inst, seed)
    if baseline is Baseline.EXACT:
        from .oracle import exact_cc

        return exact_cc(inst)[0]
    raise ValidationError("baseline 'provided' needs a clustering")


def fairify_cc(
    inst: CorrelationInstance,
    colors: ColorAssignment,
    baseline: Union[Baseline, str, Clustering] = Baseline.PIVOT,
    seed: Optional[int] = None,
    mode: FairifyMode = FairifyMode.AUTO,
) -> Clustering:
    """Solve without fairness, then move to a close fair clustering."""
    if colors.n != inst.n:
        raise ValidationError(f"{colors.n} colored points for {inst.n} nodes")
    start = baseline_clustering(inst, baseline, seed)
    check_consistent(start, colors)
    result = fairify(start, colors, mode)
    if logger.isEnabledFor(logging.DEBUG):
        logger.debug(f"fairify_cc: baseline cost {cc_cost(inst, start)}, fair cost {cc_cost(inst, result)}")
    return result
