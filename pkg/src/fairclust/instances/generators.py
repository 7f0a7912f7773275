"""
Instance generators: random colored clusterings, the 3-Partition hardness reduction, and
planted correlation-clustering graphs. Every generator is deterministic for a given seed.
"""
import logging
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from ..config import DEFAULT_SEED
from ..core import Clustering
from ..correlation import CorrelationInstance
from ..errors import ValidationError
from ..fairness import ColorAssignment
from .models import HardnessInstance, Triple

logger = logging.getLogger(__name__)

EQUI = "equi"
UNIFORM = "uniform"
GEOMETRIC = "geometric"
GEOMETRIC_P = 0.3

# Exhaustive triple search is only attempted up to this many values
THREE_PARTITION_SEARCH_LIMIT = 15


def _rng(seed: Optional[int]) -> np.random.Generator:
    return np.random.default_rng(DEFAULT_SEED if seed is None else seed)


def color_counts(n: int, k: int, ratio: Union[str, Sequence[int]] = EQUI) -> List[int]:
    """Global color counts for n points: equal classes, or exactly proportional to a profile."""
    if k < 1:
        raise ValidationError(f"need at least one color, got k={k}")
    if isinstance(ratio, str):
        if ratio != EQUI:
            raise ValidationError(f"ratio must be 'equi' or a list of {k} positive integers, got {ratio!r}")
        profile = [1] * k
    else:
        profile = [int(v) for v in ratio]
    if len(profile) != k or any(v < 1 for v in profile):
        raise ValidationError(f"profile must hold {k} positive integers, got {profile}")
    unit = sum(profile)
    if n % unit:
        raise ValidationError(f"n={n} is not a multiple of the profile total {unit}")
    return [v * (n // unit) for v in profile]


def gen_random(
    n: int,
    k: int,
    ratio: Union[str, Sequence[int]] = EQUI,
    law: str = UNIFORM,
    seed: Optional[int] = None,
    clusters: Optional[int] = None,
) -> Tuple[Clustering, ColorAssignment]:
    """
    Random clustering of n colored points. Colors follow `ratio` exactly and are shuffled;
    cluster labels are drawn uniformly over `clusters` labels or from a geometric law.
    """
    rng = _rng(seed)
    counts = color_counts(n, k, ratio)
    colors = np.repeat(np.arange(k, dtype=np.int64), counts)
    colors = colors[rng.permutation(n)]

    if clusters is None:
        clusters = max(1, int(round(np.sqrt(n))))
    if clusters < 1:
        raise ValidationError(f"need at least one cluster, got {clusters}")
    if law == UNIFORM:
        labels = rng.integers(0, clusters, size=n)
    elif law == GEOMETRIC:
        labels = np.minimum(rng.geometric(GEOMETRIC_P, size=n) - 1, clusters - 1)
    else:
        raise ValidationError(f"cluster law must be '{UNIFORM}' or '{GEOMETRIC}', got {law!r}")
    return Clustering(labels.astype(np.int64)), ColorAssignment(colors, k)


def _triple_target(values: Sequence[int]) -> int:
    d = len(values)
    if d == 0 or d % 3:
        raise ValidationError(f"number of values must be a positive multiple of 3, got {d}")
    if any(int(v) < 1 for v in values):
        raise ValidationError("values must be positive integers")
    total = sum(int(v) for v in values)
    if total % (d // 3):
        raise ValidationError(f"sum {total} is not divisible by d/3 = {d // 3}")
    return total // (d // 3)


def find_three_partition(values: Sequence[int]) -> Optional[List[Triple]]:
    """
    Triples of indices whose values each sum to T = sum / (d/3), by backtracking: the
    lowest unused index is always placed first. None when no such partition exists.
    """
    target = _triple_target(values)
    d = len(values)
    used = [False] * d
    triples: List[Triple] = []

    def place() -> bool:
        try:
            first = used.index(False)
        except ValueError:
            return True
        used[first] = True
        for second in range(first + 1, d):
            if used[second] or values[first] + values[second] >= target:
                continue
            used[second] = True
            for third in range(second + 1, d):
                if not used[third] and values[first] + values[second] + values[third] == target:
                    used[third] = True
                    triples.append((first, second, third))
                    if place():
                        return True
                    triples.pop()
                    used[third] = False
            used[second] = False
        used[first] = False
        return False

    return list(triples) if place() else None


def _check_triples(values: Sequence[int], target: int, triples: Sequence[Sequence[int]]) -> List[Triple]:
    d = len(values)
    flat = sorted(i for triple in triples for i in triple)
    if flat != list(range(d)) or any(len(t) != 3 for t in triples):
        raise ValidationError("triples must use every index 0..d-1 exactly once")
    for triple in triples:
        if sum(values[i] for i in triple) != target:
            raise ValidationError(f"triple {tuple(triple)} does not sum to T={target}")
    return [tuple(int(i) for i in t) for t in triples]


def hardness_tau(values: Sequence[int], k: int) -> int:
    target = _triple_target(values)
    if k == 3:
        return 2 * sum(x * x for x in values) + 2 * sum(x * (target - x) for x in values)
    if k > 3:
        # the sum is even whenever a partition into triples exists; distances are integers
        half = sum(x * (target - x) for x in values) // 2
        return (len(values) // 3) * (k - 1) * target * target + half
    raise ValidationError(f"the reduction needs k >= 3 colors, got k={k}")


def gen_hardness(
    values: Sequence[int], k: int, partition: Optional[Sequence[Sequence[int]]] = None
) -> HardnessInstance:
    """
    Closest-fair-clustering instance from a 3-Partition multiset.

    A YES certificate at distance tau is attached when `partition` is given or when the
    exhaustive search finds one (d <= THREE_PARTITION_SEARCH_LIMIT).
    """
    values = tuple(int(v) for v in values)
    target = _triple_target(values)
    tau = hardness_tau(values, k)
    d = len(values)

    outside = [x for x in values if not (4 * x > target and 2 * x < target)]
    if outside:
        logger.warning(f"values {outside} lie outside (T/4, T/2) for T={target}; the reduction assumes they do not")

    colors: List[int] = []
    labels: List[int] = []
    gb_clusters: List[List[int]] = []
    for i in range(d // 3):
        members = []
        for color in range(1, k):
            start = len(colors)
            colors.extend([color] * target)
            members.extend(range(start, start + target))
        labels.extend([len(gb_clusters)] * len(members))
        gb_clusters.append(members)
    r_clusters: List[List[int]] = []
    for x in values:
        start = len(colors)
        colors.extend([0] * x)
        labels.extend([len(gb_clusters) + len(r_clusters)] * x)
        r_clusters.append(list(range(start, start + x)))

    instance = HardnessInstance(
        values=values,
        k=k,
        target=target,
        clustering=Clustering(np.asarray(labels, dtype=np.int64)),
        colors=ColorAssignment(np.asarray(colors, dtype=np.int64), k),
        tau=tau,
        gb_clusters=gb_clusters,
        r_clusters=r_clusters,
    )

    if partition is None and d <= THREE_PARTITION_SEARCH_LIMIT:
        partition = find_three_partition(values)
    if partition is not None:
        instance.triples = _check_triples(values, target, partition)
        instance.certificate = _certificate(instance)
    return instance


def _certificate(instance: HardnessInstance) -> Clustering:
    """
    k = 3: every R_j becomes its own cluster together with x_j points of each of colors 1
    and 2 from the GB cluster of its triple. k >= 4: every GB cluster absorbs its three R's.
    """
    labels = np.full(instance.n, -1, dtype=np.int64)
    colors = instance.colors.colors
    next_label = 0
    for i, triple in enumerate(instance.triples):
        gb = instance.gb_clusters[i]
        if instance.k == 3:
            by_color = {c: [p for p in gb if colors[p] == c] for c in (1, 2)}
            offset = 0
            for j in triple:
                x = instance.values[j]
                labels[instance.r_clusters[j]] = next_label
                for c in (1, 2):
                    labels[by_color[c][offset:offset + x]] = next_label
                offset += x
                next_label += 1
        else:
            labels[gb] = next_label
            for j in triple:
                labels[instance.r_clusters[j]] = next_label
            next_label += 1
    return Clustering(labels)


def gen_random_three_partition(d: int, seed: Optional[int] = None) -> Tuple[Tuple[int, ...], List[Triple]]:
    """
    Random YES instance of 3-Partition with d values, each strictly inside (T/4, T/2),
    together with its certifying triples (indices into the returned values).
    """
    if d < 3 or d % 3:
        raise ValidationError(f"d must be a positive multiple of 3, got {d}")
    rng = _rng(seed)
    target = int(rng.integers(12, 61))
    low, high = target // 4 + 1, (target - 1) // 2

    groups: List[Tuple[int, int, int]] = []
    while len(groups) < d // 3:
        a, b = (int(v) for v in rng.integers(low, high + 1, size=2))
        c = target - a - b
        if low <= c <= high:
            groups.append((a, b, c))

    flat = [x for group in groups for x in group]
    order = rng.permutation(d).tolist()
    values = tuple(flat[i] for i in order)
    position = {source: index for index, source in enumerate(order)}
    triples = [tuple(sorted(position[3 * g + r] for r in range(3))) for g in range(len(groups))]
    triples.sort()
    return values, triples


def gen_correlation(
    n: int,
    k: int,
    noise: float = 0.1,
    seed: Optional[int] = None,
    clusters: Optional[int] = None,
) -> Tuple[CorrelationInstance, ColorAssignment, Clustering]:
    """
    Planted partition graph: "+" inside planted clusters, "−" across, every pair flipped with
    probability `noise`. Colors are equally sized and shuffled. Returns the planted clustering too.
    """
    if not 0.0 <= noise <= 1.0:
        raise ValidationError(f"noise must lie in [0, 1], got {noise}")
    rng = _rng(seed)
    counts = color_counts(n, k, EQUI)
    colors = np.repeat(np.arange(k, dtype=np.int64), counts)[rng.permutation(n)]
    if clusters is None:
        clusters = max(1, int(round(np.sqrt(n))))
    planted = Clustering(rng.integers(0, clusters, size=n).astype(np.int64))

    u, v = np.triu_indices(n, k=1)
    together = planted.labels[u] == planted.labels[v]
    flipped = rng.random(u.size) < noise
    plus = together ^ flipped
    edges = frozenset(zip(u[plus].tolist(), v[plus].tolist()))
    return CorrelationInstance(n, edges), ColorAssignment(colors, k), planted
