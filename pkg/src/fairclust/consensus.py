"""
Fair consensus clustering.

The objective of a candidate clustering is the l-norm of its pair-counting distances to the
m input clusterings (l = 1 is the median, CENTER takes the maximum). Scores are compared as
exact integers (sum of l-th powers, or the maximum), never as rounded roots.
"""
import logging
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Sequence, Tuple, Union

import numpy as np

from .core import Clustering, check_same_points, pair_distance
from .errors import ValidationError
from .fairness import ColorAssignment, check_consistent
from .pipeline import FairifyMode, fairify

logger = logging.getLogger(__name__)

CENTER = "center"
Norm = Union[int, str]


def parse_norm(value: Union[int, str]) -> Norm:
    """A positive integer l or "center"."""
    if isinstance(value, str):
        text = value.strip().lower()
        if text == CENTER:
            return CENTER
        try:
            value = int(text)
        except ValueError:
            raise ValidationError(f"norm must be a positive integer or 'center', got {value!r}")
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise ValidationError(f"norm must be a positive integer or 'center', got {value!r}")
    return value


@dataclass(frozen=True)
class ConsensusInstance:
    inputs: Tuple[Clustering, ...]
    norm: Norm = 1

    def __post_init__(self):
        inputs = tuple(self.inputs)
        if not inputs:
            raise ValidationError("a consensus instance needs at least one input clustering")
        for other in inputs[1:]:
            check_same_points(inputs[0], other)
        object.__setattr__(self, "inputs", inputs)
        object.__setattr__(self, "norm", parse_norm(self.norm))

    @property
    def m(self) -> int:
        return len(self.inputs)

    @property
    def n(self) -> int:
        return self.inputs[0].n

    @property
    def is_center(self) -> bool:
        return self.norm == CENTER


class ConsensusStrategy(str, Enum):
    BEST_INPUT = "best-input"
    FAIRIFY_ALL = "fairify-all"


def combine(inst: ConsensusInstance, distances: Sequence[int]) -> int:
    """Exact score from per-input distances: max for CENTER, else the sum of l-th powers."""
    if inst.is_center:
        return max(int(d) for d in distances)
    return sum(int(d) ** inst.norm for d in distances)


def consensus_score(inst: ConsensusInstance, c: Clustering) -> int:
    check_same_points(inst.inputs[0], c)
    return combine(inst, [pair_distance(x, c) for x in inst.inputs])


def _root(score: int, norm: int) -> float:
    if norm == 1:
        return float(score)
    guess = round(score ** (1.0 / norm))
    for candidate in (guess - 1, guess, guess + 1):
        if candidate >= 0 and candidate ** norm == score:
            return float(candidate)
    return score ** (1.0 / norm)


def consensus_objective(inst: ConsensusInstance, c: Clustering) -> float:
    """(sum_i dist(C_i, c)^l)^(1/l), or max_i dist(C_i, c) for CENTER."""
    score = consensus_score(inst, c)
    if inst.is_center:
        return float(score)
    return _root(score, inst.norm)


def input_distances(inst: ConsensusInstance, workers: int = 1) -> np.ndarray:
    """Symmetric m x m matrix of pair distances between the inputs."""
    m = inst.m
    matrix = np.zeros((m, m), dtype=np.int64)
    pairs = [(a, b) for a in range(m) for b in range(a + 1, m)]
    if workers <= 1 or len(pairs) <= 1:
        for a, b in pairs:
            matrix[a, b] = matrix[b, a] = pair_distance(inst.inputs[a], inst.inputs[b])
        return matrix

    with ThreadPoolExecutor(max_workers=workers) as executor:
        future_to_pair = {
            executor.submit(pair_distance, inst.inputs[a], inst.inputs[b]): (a, b) for a, b in pairs
        }
        for future in as_completed(future_to_pair):
            a, b = future_to_pair[future]
            matrix[a, b] = matrix[b, a] = future.result()
    return matrix


def best_input(inst: ConsensusInstance, workers: int = 1) -> int:
    """Index of the input with the smallest objective; lowest index on ties."""
    matrix = input_distances(inst, workers)
    scores = [combine(inst, matrix[i].tolist()) for i in range(inst.m)]
    return min(range(inst.m), key=lambda i: (scores[i], i))


def fair_consensus(
    inst: ConsensusInstance,
    colors: ColorAssignment,
    strategy: ConsensusStrategy = ConsensusStrategy.BEST_INPUT,
    mode: FairifyMode = FairifyMode.AUTO,
    workers: int = 1,
) -> Clustering:
    """
    Fair clustering with a small consensus objective.

    BEST_INPUT fairifies the best input clustering. FAIRIFY_ALL fairifies every input and keeps
    the fair candidate with the smallest objective (lowest input index on ties).
    """
    check_consistent(inst.inputs[0], colors)
    strategy = ConsensusStrategy(strategy)

    if strategy is ConsensusStrategy.BEST_INPUT:
        chosen = best_input(inst, workers)
        logger.debug(f"fair_consensus: best input is {chosen} of {inst.m}")
        return fairify(inst.inputs[chosen], colors, mode)

    candidates: List[Clustering] = []
    cache: Dict[Clustering, int] = {}
    for clustering in inst.inputs:
        fair = fairify(clustering, colors, mode)
        if fair not in cache:
            cache[fair] = consensus_score(inst, fair)
        candidates.append(fair)
    chosen = min(range(inst.m), key=lambda i: (cache[candidates[i]], i))
    logger.debug(f"fair_consensus: fairified input {chosen} scores {cache[candidates[chosen]]}")
    return candidates[chosen]
