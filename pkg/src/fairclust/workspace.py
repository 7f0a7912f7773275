"""
Mutable working representation shared by the balancing algorithms.

A ClusterWorkspace keeps, for every cluster, one id list per color. Algorithms cut points
out of a cluster (always the lowest ids of the requested color), append points to clusters,
open new clusters, and finally freeze the result back into a canonical Clustering.
"""
import logging
from typing import Dict, Iterable, List, Mapping, Optional

import numpy as np

from .core import Clustering, PointId
from .errors import InvariantError
from .fairness import ColorAssignment, ColorId, check_consistent

logger = logging.getLogger(__name__)

ColorBatch = Dict[ColorId, List[PointId]]


class ClusterWorkspace:
    """Per-(cluster, color) id lists over a fixed colored point set."""

    def __init__(self, colors: ColorAssignment):
        self.colors = colors
        self.k = colors.k
        self._members: List[List[List[PointId]]] = []

    @classmethod
    def build(cls, c: Clustering, colors: ColorAssignment) -> "ClusterWorkspace":
        check_consistent(c, colors)
        workspace = cls(colors)
        m, k = c.num_clusters, colors.k
        if m == 0:
            return workspace

        # labels major, colors minor; lexsort is stable so ids stay ascending
        order = np.lexsort((colors.colors, c.labels))
        keys = c.labels[order] * k + colors.colors[order]
        bounds = np.searchsorted(keys, np.arange(m * k + 1)).tolist()
        ids = order.tolist()
        cells = [ids[start:stop] for start, stop in zip(bounds, bounds[1:])]
        workspace._members = [cells[i * k:(i + 1) * k] for i in range(m)]
        return workspace

    @property
    def num_clusters(self) -> int:
        return len(self._members)

    def count(self, cluster: int, color: ColorId) -> int:
        return len(self._members[cluster][color])

    def size(self, cluster: int) -> int:
        return sum(len(points) for points in self._members[cluster])

    def count_table(self) -> np.ndarray:
        """Current counts c_j(C_i) as an (m, k) array."""
        if not self._members:
            return np.zeros((0, self.k), dtype=np.int64)
        return np.array([[len(points) for points in row] for row in self._members], dtype=np.int64)

    def take_lowest(self, cluster: int, color: ColorId, amount: int) -> List[PointId]:
        """Remove and return the `amount` lowest-id points of `color` from `cluster`."""
        points = self._members[cluster][color]
        if amount < 0 or amount > len(points):
            raise InvariantError(
                f"cannot take {amount} points of color {color} from cluster {cluster} "
                f"holding {len(points)}"
            )
        if amount == 0:
            return []
        points.sort()
        taken = points[:amount]
        del points[:amount]
        return taken

    def add(self, cluster: int, color: ColorId, points: Iterable[PointId]) -> None:
        self._members[cluster][color].extend(points)

    def new_cluster(self, batch: Optional[Mapping[ColorId, Iterable[PointId]]] = None) -> int:
        """Open an empty cluster (optionally seeded with a color batch); returns its index."""
        self._members.append([[] for _ in range(self.k)])
        index = len(self._members) - 1
        if batch:
            for color, points in batch.items():
                self.add(index, color, points)
        return index

    def to_clustering(self) -> Clustering:
        """Freeze into a canonical Clustering; empty clusters disappear."""
        n = self.colors.n
        placed = np.fromiter(
            (point for row in self._members for points in row for point in points), dtype=np.int64
        )
        owner = np.repeat(np.arange(self.num_clusters, dtype=np.int64), self.count_table().sum(axis=1))
        if placed.size and (placed.min() < 0 or placed.max() >= n):
            raise InvariantError(f"workspace holds a point outside 0..{n - 1}")
        hits = np.bincount(placed, minlength=n)
        if (hits > 1).any():
            raise InvariantError(f"point {int(np.flatnonzero(hits > 1)[0])} was placed in two clusters")
        if (hits == 0).any():
            raise InvariantError(f"point {int(np.flatnonzero(hits == 0)[0])} was lost from the workspace")
        labels = np.empty(n, dtype=np.int64)
        labels[placed] = owner
        return Clustering(labels)
