"""
Closest fair clustering when every color class has the same size.

fair_power_of_two balances colors hierarchically: at iteration i the colors are grouped in
blocks of 2^i, each cluster sheds the excess of the larger half of every block pair, and the
shed sets are merged greedily (multi_gm) into new, locally balanced clusters.

fair_equi handles any number of colors by splitting them along the binary representation of
k, balancing every power-of-two group on its own and then evening the groups out with the
meta-color balancing of make_pdc_fair.
"""
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Deque, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .core import Clustering, PointId, check_same_points
from .errors import InvariantError, ValidationError
from .fairness import ColorAssignment, ColorId, check_consistent, is_fair
from .workspace import ClusterWorkspace, ColorBatch

logger = logging.getLogger(__name__)

Block = Tuple[int, ...]
IterationHook = Callable[[int, Clustering], None]


@dataclass(frozen=True)
class BlockSchedule:
    """
    Blocks of colors (or meta-colors) per iteration.

    levels[0] holds singleton blocks; levels[i] holds the blocks after iteration i, formed by
    joining consecutive pairs of levels[i-1]. An odd last block is carried forward unchanged.
    """
    levels: Tuple[Tuple[Block, ...], ...]

    @classmethod
    def over(cls, items: Iterable[int]) -> "BlockSchedule":
        level: Tuple[Block, ...] = tuple((item,) for item in items)
        levels = [level]
        while len(level) > 1:
            merged = [level[s] + level[s + 1] for s in range(0, len(level) - 1, 2)]
            if len(level) % 2:
                merged.append(level[-1])
            level = tuple(merged)
            levels.append(level)
        return cls(tuple(levels))

    @property
    def iterations(self) -> int:
        return len(self.levels) - 1

    def blocks(self, i: int) -> Tuple[Block, ...]:
        return self.levels[i]

    def pairs(self, i: int) -> List[Tuple[Block, Block]]:
        """Block pairs joined at iteration i (1-based)."""
        previous = self.levels[i - 1]
        return [(previous[s], previous[s + 1]) for s in range(0, len(previous) - 1, 2)]

    def carried(self, i: int) -> Optional[Block]:
        """The block passed through iteration i without a partner, if any."""
        previous = self.levels[i - 1]
        return previous[-1] if len(previous) % 2 else None


def block_schedule(k: int) -> BlockSchedule:
    """Block schedule over the colors 0..k-1."""
    if k < 1:
        raise ValidationError(f"need at least one color, got k={k}")
    return BlockSchedule.over(range(k))


def _is_power_of_two(k: int) -> bool:
    return k >= 1 and k & (k - 1) == 0


def _block_excess(counts_a: Sequence[int], counts_b: Sequence[int]) -> Tuple[Optional[int], int]:
    """
    Which side of a block pair is larger (0 for A, 1 for B, None when equal) and how many
    points of each of its colors must go.
    """
    if len(counts_a) != len(counts_b):
        raise InvariantError(f"paired blocks differ in size ({len(counts_a)} vs {len(counts_b)})")
    if len(set(counts_a)) > 1 or len(set(counts_b)) > 1:
        raise InvariantError(f"block colors are not equally represented: {list(counts_a)} / {list(counts_b)}")
    diff = counts_a[0] - counts_b[0]
    if diff > 0:
        return 0, diff
    if diff < 0:
        return 1, -diff
    return None, 0


def _by_color(points: Iterable[PointId], colors: ColorAssignment) -> Dict[ColorId, List[PointId]]:
    grouped: Dict[ColorId, List[PointId]] = {}
    for point in sorted(int(v) for v in points):
        grouped.setdefault(int(colors.colors[point]), []).append(point)
    return grouped


def surplus_equi(
    cluster: Iterable[PointId], block_a: Block, block_b: Block, colors: ColorAssignment
) -> FrozenSet[PointId]:
    """
    Excess of the larger block over the smaller inside one cluster: the lowest-id points of
    each of the larger block's colors, equally many per color.
    """
    grouped = _by_color(cluster, colors)
    side, amount = _block_excess(
        [len(grouped.get(j, ())) for j in block_a],
        [len(grouped.get(j, ())) for j in block_b],
    )
    if side is None:
        return frozenset()
    block = block_a if side == 0 else block_b
    return frozenset(point for j in block for point in grouped[j][:amount])


def _per_color(batch: ColorBatch) -> int:
    return len(next(iter(batch.values())))


def _split_lowest(batch: ColorBatch, amount: int) -> ColorBatch:
    """Detach `amount` lowest-id points of every color; the remainder stays in `batch`."""
    head = {}
    for color, points in batch.items():
        head[color] = points[:amount]
        del points[:amount]
    return head


def _join(left: ColorBatch, right: ColorBatch) -> ColorBatch:
    joined = {color: list(points) for color, points in left.items()}
    for color, points in right.items():
        joined.setdefault(color, []).extend(points)
    return joined


@dataclass
class SurplusPool:
    """Shed sets of one block pair, waiting to be merged into locally fair clusters."""
    block_a: Block
    block_b: Block
    side_a: List[ColorBatch] = field(default_factory=list)
    side_b: List[ColorBatch] = field(default_factory=list)

    def add(self, side: int, batch: ColorBatch) -> None:
        block = self.block_a if side == 0 else self.block_b
        counts = [len(batch.get(j, ())) for j in block]
        if set(batch) - set(block) or len(set(counts)) != 1:
            raise InvariantError(f"surplus set is not balanced over block {block}: {counts}")
        if counts[0] == 0:
            return
        for points in batch.values():
            points.sort()
        (self.side_a if side == 0 else self.side_b).append(batch)

    @property
    def totals(self) -> Tuple[int, int]:
        size_a = sum(_per_color(b) * len(self.block_a) for b in self.side_a)
        size_b = sum(_per_color(b) * len(self.block_b) for b in self.side_b)
        return size_a, size_b

    def merge(self) -> List[ColorBatch]:
        """Greedy pairing in input order; the larger set is trimmed and its rest waits in front."""
        if len(self.block_a) != len(self.block_b):
            raise InvariantError(f"cannot merge blocks of sizes {len(self.block_a)} and {len(self.block_b)}")
        size_a, size_b = self.totals
        if size_a != size_b:
            raise InvariantError(f"unbalanced surplus totals: {size_a} vs {size_b}")

        queue_a: Deque[ColorBatch] = deque(self.side_a)
        queue_b: Deque[ColorBatch] = deque(self.side_b)
        merged: List[ColorBatch] = []
        while queue_a and queue_b:
            count_a, count_b = _per_color(queue_a[0]), _per_color(queue_b[0])
            if count_a == count_b:
                merged.append(_join(queue_a.popleft(), queue_b.popleft()))
            elif count_a > count_b:
                merged.append(_join(_split_lowest(queue_a[0], count_b), queue_b.popleft()))
            else:
                merged.append(_join(queue_a.popleft(), _split_lowest(queue_b[0], count_a)))
        if queue_a or queue_b:
            raise InvariantError("surplus sets left over after merging")
        self.side_a, self.side_b = [], []
        return merged


def multi_gm(
    side_j: Sequence[Iterable[PointId]],
    side_j1: Sequence[Iterable[PointId]],
    colors: ColorAssignment,
    block_a: Optional[Block] = None,
    block_b: Optional[Block] = None,
) -> List[FrozenSet[PointId]]:
    """
    Merge the shed sets of two paired blocks into sets with equal counts of every color of
    both blocks. Blocks default to the colors found on each side.
    """
    grouped_a = [_by_color(s, colors) for s in side_j]
    grouped_b = [_by_color(s, colors) for s in side_j1]
    if block_a is None:
        block_a = tuple(sorted({j for g in grouped_a for j in g}))
    if block_b is None:
        block_b = tuple(sorted({j for g in grouped_b for j in g}))

    pool = SurplusPool(tuple(block_a), tuple(block_b))
    for batch in grouped_a:
        pool.add(0, batch)
    for batch in grouped_b:
        pool.add(1, batch)
    return [frozenset(p for points in batch.values() for p in points) for batch in pool.merge()]


def _unbalanced(table: np.ndarray, block: Sequence[ColorId]) -> np.ndarray:
    """Indices of the rows whose counts differ somewhere inside `block`."""
    counts = table[:, list(block)]
    return np.flatnonzero((counts != counts[:, :1]).any(axis=1))


def _check_blocks(workspace: ClusterWorkspace, blocks: Sequence[Block]) -> None:
    table = workspace.count_table()
    for block in blocks:
        unbalanced = _unbalanced(table, block)
        if unbalanced.size:
            raise InvariantError(f"cluster {int(unbalanced[0])} is unbalanced over block {block}")


def _balance_power_of_two(
    workspace: ClusterWorkspace, group: Sequence[ColorId], on_iteration: Optional[IterationHook] = None
) -> None:
    schedule = BlockSchedule.over(group)
    for i in range(1, schedule.iterations + 1):
        # pairs of one level use disjoint colors and new clusters hold only their own pair
        table = workspace.count_table()
        for block_a, block_b in schedule.pairs(i):
            pool = SurplusPool(block_a, block_b)
            for cluster in _unbalanced(table, tuple(block_a) + tuple(block_b)).tolist():
                side, amount = _block_excess(
                    table[cluster, list(block_a)].tolist(), table[cluster, list(block_b)].tolist()
                )
                if side is None:
                    continue
                block = block_a if side == 0 else block_b
                pool.add(side, {j: workspace.take_lowest(cluster, j, amount) for j in block})
            shed = sum(pool.totals)
            for batch in pool.merge():
                workspace.new_cluster(batch)
            logger.debug(f"iteration {i}: blocks {block_a}|{block_b} moved {shed} points")
        _check_blocks(workspace, schedule.blocks(i))
        if on_iteration is not None:
            on_iteration(i, workspace.to_clustering())


def _require_equi(d: Clustering, colors: ColorAssignment) -> None:
    check_consistent(d, colors)
    if not colors.is_equi:
        raise ValidationError(f"color classes have unequal sizes: {colors.counts.tolist()}")


def fair_power_of_two(
    d: Clustering, colors: ColorAssignment, on_iteration: Optional[IterationHook] = None
) -> Clustering:
    """
    Fair clustering close to `d` for k = 2^r equally sized color classes.

    After iteration i every cluster holds equally many points of each color within each
    block of 2^i colors. `on_iteration(i, clustering)` sees the intermediate result.
    """
    if d.n == 0:
        check_consistent(d, colors)
        return d
    _require_equi(d, colors)
    if not _is_power_of_two(colors.k):
        raise ValidationError(f"number of colors must be a power of two, got k={colors.k}")

    workspace = ClusterWorkspace.build(d, colors)
    _balance_power_of_two(workspace, range(colors.k), on_iteration)
    return workspace.to_clustering()


def binary_color_groups(k: int) -> List[List[ColorId]]:
    """One group of 2^b colors per set bit b of k, largest first, colors ascending."""
    if k < 1:
        raise ValidationError(f"need at least one color, got k={k}")
    groups = []
    start = 0
    for bit in range(k.bit_length() - 1, -1, -1):
        if k >> bit & 1:
            size = 1 << bit
            groups.append(list(range(start, start + size)))
            start += size
    return groups


def fair_equi(d: Clustering, colors: ColorAssignment) -> Clustering:
    """Fair clustering close to `d` for any number of equally sized color classes."""
    # make_pdc_fair's meta-color balancing lives in general, which imports this module
    from .general import MetaColor, balance_meta_colors

    if d.n == 0:
        check_consistent(d, colors)
        return d
    _require_equi(d, colors)

    groups = binary_color_groups(colors.k)
    workspace = ClusterWorkspace.build(d, colors)
    for group in groups:
        if len(group) > 1:
            _balance_power_of_two(workspace, group)
    logger.debug(f"fair_equi: balanced {len(groups)} groups of sizes {[len(g) for g in groups]}")

    if len(groups) > 1:
        metas = [MetaColor(tuple((j, 1) for j in group)) for group in groups]
        balance_meta_colors(workspace, metas)

    result = workspace.to_clustering()
    if not is_fair(result, colors):
        raise InvariantError("fair_equi produced an unfair clustering")
    check_same_points(d, result)
    return result
