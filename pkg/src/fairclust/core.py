"""
Canonical partition representation and the pair-counting distance between clusterings.

A Clustering is stored as a read-only label array indexed by point id. Labels are always
normalized: dense cluster indices 0..m-1 assigned in first-appearance order over ascending
point ids. Two clusterings are equal exactly when they induce the same partition.
"""
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from .config import MAX_POINTS
from .errors import ValidationError

PointId = int
PairDistance = int

RawAssignment = Union[Mapping[PointId, Hashable], Iterable[Tuple[PointId, Hashable]]]


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


def pairs_within(counts: np.ndarray) -> int:
    """Sum of C(c, 2) over a vector of non-negative counts, exact."""
    c = np.asarray(counts, dtype=np.uint64)
    c = c[c > 1]
    # c * (c - 1) fits in uint64 for c <= 2**32
    return int((c * (c - np.uint64(1)) // np.uint64(2)).sum())


@dataclass(frozen=True, eq=False)
class Clustering:
    """
    A partition of the points 0..n-1 into non-empty clusters.

    Build through normalize(), Clustering.from_labels() or Clustering.from_clusters();
    whatever labels are passed in are canonicalized on construction.
    """
    labels: np.ndarray

    def __post_init__(self):
        raw = np.asarray(self.labels)
        if raw.ndim != 1:
            raise ValidationError(f"labels must be one-dimensional, got shape {raw.shape}")
        if raw.size > MAX_POINTS:
            raise ValidationError(f"at most {MAX_POINTS} points are supported, got {raw.size}")
        if raw.size == 0:
            codes = np.zeros(0, dtype=np.int64)
        else:
            # None and NaN are ordinary labels (and the same one)
            codes, _ = pd.factorize(raw, sort=False, use_na_sentinel=False)
            codes = codes.astype(np.int64, copy=False)
        object.__setattr__(self, "labels", _frozen(np.array(codes, dtype=np.int64)))

    @classmethod
    def from_labels(cls, labels: Sequence[Hashable]) -> "Clustering":
        """Clustering whose point i carries labels[i]."""
        return cls(np.asarray(labels))

    @classmethod
    def from_clusters(cls, clusters: Iterable[Iterable[PointId]], n: Optional[int] = None) -> "Clustering":
        """
        Clustering from explicit clusters. Empty clusters are dropped; every point of 0..n-1
        must appear exactly once (n defaults to the total number of listed points).
        """
        pairs = []
        for index, cluster in enumerate(clusters):
            for point in cluster:
                pairs.append((point, index))
        clustering = normalize(pairs)
        if n is not None and clustering.n != n:
            raise ValidationError(f"clusters cover {clustering.n} points, expected {n}")
        return clustering

    @classmethod
    def single(cls, n: int) -> "Clustering":
        """All n points in one cluster."""
        return cls(np.zeros(n, dtype=np.int64))

    @classmethod
    def singletons(cls, n: int) -> "Clustering":
        """Every point in its own cluster."""
        return cls(np.arange(n, dtype=np.int64))

    @property
    def n(self) -> int:
        return int(self.labels.size)

    @property
    def num_clusters(self) -> int:
        return int(self.labels.max()) + 1 if self.labels.size else 0

    @cached_property
    def sizes(self) -> np.ndarray:
        """Cluster sizes indexed by cluster index."""
        return _frozen(np.bincount(self.labels, minlength=self.num_clusters))

    @cached_property
    def members(self) -> Tuple[np.ndarray, ...]:
        """Sorted point ids of every cluster, indexed by cluster index."""
        if self.num_clusters == 0:
            return ()
        order = np.argsort(self.labels, kind="stable")
        return tuple(_frozen(part) for part in np.split(order, np.cumsum(self.sizes)[:-1]))

    @cached_property
    def clusters(self) -> Tuple[FrozenSet[PointId], ...]:
        """Derived view: the clusters as point-id sets."""
        return tuple(frozenset(int(v) for v in part) for part in self.members)

    def assignment(self) -> Dict[PointId, int]:
        """Point id to cluster index."""
        return {point: int(label) for point, label in enumerate(self.labels.tolist())}

    def together(self, u: PointId, v: PointId) -> bool:
        return bool(self.labels[u] == self.labels[v])

    def __len__(self) -> int:
        return self.num_clusters

    def __eq__(self, other) -> bool:
        if not isinstance(other, Clustering):
            return NotImplemented
        return np.array_equal(self.labels, other.labels)

    def __hash__(self) -> int:
        return hash(self.labels.tobytes())

    def __repr__(self) -> str:
        if self.n <= 32:
            body = [sorted(c) for c in self.clusters]
            return f"Clustering({body})"
        return f"Clustering(n={self.n}, clusters={self.num_clusters})"

    def to_dict(self) -> Dict[str, object]:
        return {"n": self.n, "clusters": [sorted(c) for c in self.clusters]}


def normalize(raw_assignment: RawAssignment) -> Clustering:
    """
    Build the canonical Clustering from a point-id -> label map (or (point, label) pairs).

    Labels may be any hashable values; they are mapped to dense indices in order of first
    appearance over ascending point ids. Point ids must be exactly 0..n-1.
    """
    if isinstance(raw_assignment, Clustering):
        return raw_assignment
    if isinstance(raw_assignment, Mapping):
        items: List[Tuple[PointId, Hashable]] = list(raw_assignment.items())
    else:
        items = list(raw_assignment)

    n = len(items)
    if n == 0:
        return Clustering(np.zeros(0, dtype=np.int64))

    labels: List[Hashable] = [None] * n
    seen = np.zeros(n, dtype=bool)
    for point, label in items:
        if isinstance(point, bool) or not isinstance(point, (int, np.integer)) or point < 0:
            raise ValidationError(f"point ids must be non-negative integers, got {point!r}")
        if point >= n:
            raise ValidationError(f"missing point id: ids must be dense 0..{n - 1}, got {point}")
        if seen[point]:
            raise ValidationError(f"duplicate point id {point}")
        seen[point] = True
        labels[point] = label

    return Clustering(pd.Series(labels, dtype=object).to_numpy())


def check_same_points(a: Clustering, b: Clustering) -> None:
    if a.n != b.n:
        raise ValidationError(f"clusterings cover different point sets ({a.n} vs {b.n} points)")


def contingency_counts(a: Clustering, b: Clustering) -> np.ndarray:
    """Non-zero |A_i ∩ B_j| counts, from a hashed (cluster, cluster) table."""
    check_same_points(a, b)
    if a.n == 0:
        return np.zeros(0, dtype=np.int64)
    table = pd.DataFrame({"a": a.labels, "b": b.labels})
    return table.groupby(["a", "b"], sort=False).size().to_numpy()


def pair_distance(a: Clustering, b: Clustering) -> PairDistance:
    """
    Number of unordered point pairs co-clustered in exactly one of a and b.

    Computed as sum C(|A_i|,2) + sum C(|B_j|,2) - 2 * sum C(|A_i ∩ B_j|,2) in time
    O(n + number of non-empty intersections).
    """
    overlap = contingency_counts(a, b)
    return pairs_within(a.sizes) + pairs_within(b.sizes) - 2 * pairs_within(overlap)
