"""
Color bookkeeping: global color profiles, the fairness and p-divisibility predicates,
and the surplus/deficit primitives shared by the balancing algorithms.
"""
from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .core import Clustering, PointId
from .errors import ValidationError

ColorId = int


@dataclass(frozen=True, eq=False)
class ColorAssignment:
    """
    Per-point color labels in 0..k-1. Every color class is non-empty.

    k defaults to the largest color id plus one.
    """
    colors: np.ndarray
    k: Optional[int] = None

    def __post_init__(self):
        colors = np.array(self.colors, dtype=np.int64).reshape(-1)
        k = self.k
        if k is None:
            k = int(colors.max()) + 1 if colors.size else 0
        if colors.size and (colors.min() < 0 or colors.max() >= k):
            raise ValidationError(f"color ids must lie in 0..{k - 1}")
        counts = np.bincount(colors, minlength=k) if k else np.zeros(0, dtype=np.int64)
        empty = np.flatnonzero(counts == 0)
        if empty.size:
            raise ValidationError(f"empty color class {int(empty[0])}")
        colors.setflags(write=False)
        counts.setflags(write=False)
        object.__setattr__(self, "colors", colors)
        object.__setattr__(self, "k", int(k))
        object.__setattr__(self, "_counts", counts)

    @classmethod
    def from_list(cls, colors: Sequence[int], k: Optional[int] = None) -> "ColorAssignment":
        return cls(np.asarray(list(colors), dtype=np.int64), k)

    @property
    def n(self) -> int:
        return int(self.colors.size)

    @property
    def counts(self) -> np.ndarray:
        """Global count of every color."""
        return self._counts

    @property
    def is_equi(self) -> bool:
        """True when all color classes have the same size."""
        return self.k <= 1 or bool((self._counts == self._counts[0]).all())

    def color_of(self, point: PointId) -> ColorId:
        return int(self.colors[point])

    def __eq__(self, other) -> bool:
        if not isinstance(other, ColorAssignment):
            return NotImplemented
        return self.k == other.k and np.array_equal(self.colors, other.colors)

    def __hash__(self) -> int:
        return hash((self.k, self.colors.tobytes()))


@dataclass(frozen=True)
class ColorProfile:
    """Reduced global ratio p_1:...:p_k with scale g, so that count(c_j) = p_j * g."""
    p: Tuple[int, ...]
    g: int

    def __post_init__(self):
        if any(value < 1 for value in self.p):
            raise ValidationError(f"profile entries must be positive, got {self.p}")
        if self.g < 1:
            raise ValidationError(f"profile scale must be positive, got {self.g}")

    @property
    def k(self) -> int:
        return len(self.p)

    @property
    def unit_size(self) -> int:
        """Size of the smallest fair cluster."""
        return sum(self.p)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.p, dtype=np.int64)


@dataclass(frozen=True)
class ColorHistogram:
    """Per-cluster color counts c_j(C_i); rows are clusters, columns colors."""
    table: np.ndarray

    @property
    def color_totals(self) -> np.ndarray:
        return self.table.sum(axis=0)


def check_consistent(c: Clustering, colors: ColorAssignment) -> None:
    if c.n != colors.n:
        raise ValidationError(f"clustering has {c.n} points but {colors.n} points are colored")


def reduced_profile(colors: ColorAssignment) -> ColorProfile:
    """Global color counts divided by their gcd."""
    counts = colors.counts
    if colors.k == 0:
        return ColorProfile((), 1)
    if (counts == 0).any():
        raise ValidationError(f"empty color class {int(np.flatnonzero(counts == 0)[0])}")
    g = int(np.gcd.reduce(counts))
    return ColorProfile(tuple(int(v) for v in counts // g), g)


def color_histogram(c: Clustering, colors: ColorAssignment) -> ColorHistogram:
    check_consistent(c, colors)
    m, k = c.num_clusters, colors.k
    if m == 0 or k == 0:
        return ColorHistogram(np.zeros((m, k), dtype=np.int64))
    flat = np.bincount(c.labels * k + colors.colors, minlength=m * k)
    return ColorHistogram(flat.reshape(m, k))


def _fair_rows(table: np.ndarray, p: np.ndarray) -> np.ndarray:
    scale = table[:, 0] // p[0]
    return (table == scale[:, None] * p[None, :]).all(axis=1)


def is_fair(c: Clustering, colors: ColorAssignment) -> bool:
    """True iff every cluster's color counts are t * (p_1, ..., p_k) for an integer t."""
    check_consistent(c, colors)
    if colors.k <= 1 or c.num_clusters == 0:
        return True
    profile = reduced_profile(colors)
    return bool(_fair_rows(color_histogram(c, colors).table, profile.as_array()).all())


def unfair_clusters(c: Clustering, colors: ColorAssignment) -> List[int]:
    """Indices of the clusters whose color counts break the global ratio."""
    check_consistent(c, colors)
    if colors.k <= 1 or c.num_clusters == 0:
        return []
    profile = reduced_profile(colors)
    ok = _fair_rows(color_histogram(c, colors).table, profile.as_array())
    return [int(i) for i in np.flatnonzero(~ok)]


def is_p_divisible(c: Clustering, colors: ColorAssignment, profile: ColorProfile) -> bool:
    """True iff c_j(C_i) is a multiple of p_j for every cluster and color."""
    check_consistent(c, colors)
    if profile.k != colors.k:
        raise ValidationError(f"profile has {profile.k} entries for {colors.k} colors")
    if colors.k == 0 or c.num_clusters == 0:
        return True
    table = color_histogram(c, colors).table
    return bool((table % profile.as_array()[None, :] == 0).all())


def surplus_count(count: int, p_j: int) -> int:
    """|surplus| for a cluster holding `count` points of a color with ratio entry p_j."""
    if p_j < 1:
        raise ValidationError(f"p_j must be positive, got {p_j}")
    if count == 0:
        return 0
    remainder = count % p_j
    return remainder if remainder else p_j


def deficit_count(count: int, p_j: int) -> int:
    """Points of the color needed to reach the next multiple of p_j; 0 when divisible."""
    if p_j < 1:
        raise ValidationError(f"p_j must be positive, got {p_j}")
    remainder = count % p_j
    return p_j - remainder if remainder else 0


def _color_points(cluster: Iterable[PointId], color_j: ColorId, colors: ColorAssignment) -> List[PointId]:
    return sorted(int(v) for v in cluster if colors.colors[v] == color_j)


def surplus_pdc(
    cluster: Iterable[PointId], color_j: ColorId, p_j: int, colors: ColorAssignment
) -> FrozenSet[PointId]:
    """
    The lowest-id color-j points of the cluster forming its surplus: c_j mod p_j of them,
    p_j of them when the count is a positive multiple of p_j, none when the count is 0.
    """
    points = _color_points(cluster, color_j, colors)
    return frozenset(points[:surplus_count(len(points), p_j)])


def deficit_size(cluster: Iterable[PointId], color_j: ColorId, p_j: int, colors: ColorAssignment) -> int:
    """p_j - |surplus| for a non-divisible count, 0 when the count is a multiple of p_j."""
    return deficit_count(len(_color_points(cluster, color_j, colors)), p_j)
