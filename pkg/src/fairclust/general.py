"""
Closest fair clustering for an arbitrary global color ratio p_1:...:p_k.

create_pdc first makes every cluster p-divisible (each color count a multiple of p_j) by
cutting small remainders and topping up large ones. make_pdc_fair then evens out the
scaling factors of the colors block by block until every cluster is a multiple of p.
"""
import heapq
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Deque, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .core import Clustering, PointId
from .equi import BlockSchedule, IterationHook
from .errors import InvariantError, ValidationError
from .fairness import (
    ColorAssignment,
    ColorId,
    ColorProfile,
    check_consistent,
    is_fair,
    is_p_divisible,
    reduced_profile,
)
from .workspace import ClusterWorkspace

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MetaColor:
    """Colors moved together, `unit` points of each member per scaling step."""
    members: Tuple[Tuple[ColorId, int], ...]

    @property
    def weight(self) -> int:
        return sum(unit for _, unit in self.members)

    @property
    def first_color(self) -> ColorId:
        return self.members[0][0]


def _check_profile(colors: ColorAssignment, profile: ColorProfile) -> None:
    if profile.k != colors.k:
        raise ValidationError(f"profile has {profile.k} entries for {colors.k} colors")
    if colors.k == 0:
        return
    scale, remainder = divmod(int(colors.counts[0]), profile.p[0])
    if remainder or any(int(c) != scale * p for c, p in zip(colors.counts, profile.p)):
        raise ValidationError(
            f"color counts {colors.counts.tolist()} are not in the ratio {list(profile.p)}"
        )


# -- create_pdc --------------------------------------------------------------------------

@dataclass
class CutMergeState:
    """Bookkeeping for one color while create_pdc makes its counts divisible by p."""
    color: ColorId
    p: int
    cut: List[int] = field(default_factory=list)
    merge: List[int] = field(default_factory=list)
    # outstanding deficits of MERGE clusters, in cluster-index order
    deficits: Dict[int, int] = field(default_factory=dict)
    extras: List[int] = field(default_factory=list)

    @staticmethod
    def cut_cost(size: int, surplus: int) -> int:
        """κ: pairs broken by cutting `surplus` points out of a cluster of `size`."""
        return surplus * (size - surplus)

    @staticmethod
    def merge_cost(size: int, deficit: int) -> int:
        """μ: pairs created by merging `deficit` points into a cluster of `size`."""
        return deficit * size


def _donate(workspace: ClusterWorkspace, state: CutMergeState, points: List[PointId],
            donor: Optional[int] = None, served: Optional[List[int]] = None) -> List[PointId]:
    """Hand points to MERGE deficits in index order; returns what nobody needed."""
    filled = []
    for cluster, need in state.deficits.items():
        if not points:
            break
        if cluster == donor:
            continue
        amount = min(need, len(points))
        workspace.add(cluster, state.color, points[:amount])
        if served is not None:
            served.append(cluster)
        points = points[amount:]
        state.deficits[cluster] = need - amount
        if amount == need:
            filled.append(cluster)
    for cluster in filled:
        del state.deficits[cluster]
    return points


def _fill_extras(workspace: ClusterWorkspace, state: CutMergeState, points: List[PointId]) -> None:
    for point in points:
        if not state.extras or workspace.count(state.extras[-1], state.color) == state.p:
            state.extras.append(workspace.new_cluster())
        workspace.add(state.extras[-1], state.color, [point])


def _candidate(workspace: ClusterWorkspace, state: CutMergeState, cluster: int) -> Optional[Tuple[int, int]]:
    """(κ - μ, surplus) for a MERGE-phase donor, or None when it has nothing to give."""
    count = workspace.count(cluster, state.color)
    remainder = count % state.p
    if remainder:
        surplus, deficit = remainder, state.p - remainder
    elif count >= state.p:
        surplus, deficit = state.p, 0
    else:
        return None
    size = workspace.size(cluster)
    return state.cut_cost(size, surplus) - state.merge_cost(size, deficit), surplus


def _cut_and_merge(workspace: ClusterWorkspace, color: ColorId, p: int) -> CutMergeState:
    state = CutMergeState(color, p)
    for cluster in range(workspace.num_clusters):
        remainder = workspace.count(cluster, color) % p
        if remainder == 0:
            continue
        if 2 * remainder <= p:
            state.cut.append(cluster)
        else:
            state.merge.append(cluster)
            state.deficits[cluster] = p - remainder

    # CUT phase: small remainders feed the MERGE deficits, the rest forms new clusters
    for cluster in state.cut:
        surplus = workspace.take_lowest(cluster, color, workspace.count(cluster, color) % p)
        leftover = _donate(workspace, state, surplus)
        _fill_extras(workspace, state, leftover)

    for extra in state.extras:
        if workspace.count(extra, color) != p:
            raise InvariantError(
                f"extra cluster {extra} holds {workspace.count(extra, color)} points of color {color}, expected {p}"
            )

    # MERGE phase: cheapest donors (κ - μ) serve what the CUT phase could not
    version = {cluster: 0 for cluster in state.cut + state.merge}
    heap: List[Tuple[int, int, int]] = []

    def push(cluster: int) -> None:
        version[cluster] += 1
        entry = _candidate(workspace, state, cluster)
        if entry is not None:
            heapq.heappush(heap, (entry[0], cluster, version[cluster]))

    if state.deficits:
        for cluster in sorted(version):
            push(cluster)

    picks = 0
    while state.deficits:
        if not heap:
            raise InvariantError(f"no donor left for color {color} with deficits {state.deficits}")
        _, cluster, stamp = heapq.heappop(heap)
        if stamp != version[cluster]:
            continue
        entry = _candidate(workspace, state, cluster)
        if entry is None:
            continue
        surplus = workspace.take_lowest(cluster, color, entry[1])
        state.deficits.pop(cluster, None)
        served: List[int] = []
        leftover = _donate(workspace, state, surplus, donor=cluster, served=served)
        if leftover:
            raise InvariantError(f"{len(leftover)} surplus points of color {color} found no deficit")
        picks += 1
        push(cluster)
        for recipient in served:
            push(recipient)

    logger.debug(
        f"color {color}: {len(state.cut)} cut, {len(state.merge)} merge, "
        f"{len(state.extras)} extra clusters, {picks} merge-phase picks"
    )
    return state


def create_pdc(d: Clustering, colors: ColorAssignment, profile: ColorProfile) -> Clustering:
    """
    Make every cluster p-divisible, one color at a time in ascending color id.

    Clusters whose count is already a multiple of p_j are left alone for that color.
    """
    check_consistent(d, colors)
    _check_profile(colors, profile)
    workspace = ClusterWorkspace.build(d, colors)
    for color, p in enumerate(profile.p):
        if p > 1:
            _cut_and_merge(workspace, color, p)
    result = workspace.to_clustering()
    if not is_p_divisible(result, colors, profile):
        raise InvariantError("create_pdc produced a clustering that is not p-divisible")
    return result


# -- make_pdc_fair -----------------------------------------------------------------------

@dataclass
class BalanceLedger:
    """Scaling factors and the donor pool of one block pair."""
    block_a: Tuple[int, ...]
    block_b: Tuple[int, ...]
    x: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))
    y: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))
    pool: Dict[ColorId, Deque[PointId]] = field(default_factory=dict)
    cut_total: int = 0
    merged_total: int = 0

    def deposit(self, color: ColorId, points: List[PointId]) -> None:
        self.pool.setdefault(color, deque()).extend(points)
        self.cut_total += len(points)

    def withdraw(self, color: ColorId, amount: int) -> List[PointId]:
        queue = self.pool.get(color)
        if queue is None or len(queue) < amount:
            available = 0 if queue is None else len(queue)
            raise InvariantError(f"donor pool for color {color} holds {available}, {amount} requested")
        self.merged_total += amount
        return [queue.popleft() for _ in range(amount)]

    def check_drained(self) -> None:
        leftover = {color: len(q) for color, q in self.pool.items() if q}
        if leftover or self.cut_total != self.merged_total:
            raise InvariantError(f"donor pool imbalance after balancing: {leftover}")


def _scale(table: np.ndarray, metas: Sequence[MetaColor], block: Sequence[int]) -> np.ndarray:
    """Per-cluster common scaling factor of a balanced block, from an (m, k) count table."""
    members = [member for index in block for member in metas[index].members]
    counts = table[:, [color for color, _ in members]]
    units = np.array([unit for _, unit in members], dtype=np.int64)
    off_unit = np.flatnonzero((counts % units).any(axis=1))
    if off_unit.size:
        cluster = int(off_unit[0])
        raise InvariantError(
            f"cluster {cluster} holds {counts[cluster].tolist()} points of colors "
            f"{[color for color, _ in members]}, not multiples of {units.tolist()}"
        )
    factors = counts // units
    uneven = np.flatnonzero((factors != factors[:, :1]).any(axis=1))
    if uneven.size:
        cluster = int(uneven[0])
        raise InvariantError(
            f"cluster {cluster} is unbalanced over meta-colors {list(block)}: {sorted(set(factors[cluster].tolist()))}"
        )
    return factors[:, 0]


def balance_meta_colors(
    workspace: ClusterWorkspace, metas: Sequence[MetaColor], on_iteration: Optional[IterationHook] = None
) -> None:
    """
    Even out the scaling factors of `metas` block by block. Meta-colors are ordered by
    descending weight (ties by first color id) before blocks are built.
    """
    ordered = sorted(metas, key=lambda meta: (-meta.weight, meta.first_color))
    schedule = BlockSchedule.over(range(len(ordered)))
    for t in range(1, schedule.iterations + 1):
        # block pairs of one level touch disjoint colors, so one table serves them all
        table = workspace.count_table()
        for block_a, block_b in schedule.pairs(t):
            ledger = BalanceLedger(block_a, block_b)
            ledger.x = _scale(table, ordered, block_a)
            ledger.y = _scale(table, ordered, block_b)

            b_members = [member for index in block_b for member in ordered[index].members]
            for cluster in np.flatnonzero(ledger.x < ledger.y).tolist():
                excess = int(ledger.y[cluster] - ledger.x[cluster])
                for color, unit in b_members:
                    ledger.deposit(color, workspace.take_lowest(cluster, color, unit * excess))
            for cluster in np.flatnonzero(ledger.x > ledger.y).tolist():
                missing = int(ledger.x[cluster] - ledger.y[cluster])
                for color, unit in b_members:
                    workspace.add(cluster, color, ledger.withdraw(color, unit * missing))
            ledger.check_drained()
            logger.debug(f"iteration {t}: meta blocks {block_a}|{block_b} moved {ledger.cut_total} points")

        table = workspace.count_table()
        for block in schedule.blocks(t):
            _scale(table, ordered, block)
        if on_iteration is not None:
            on_iteration(t, workspace.to_clustering())


def make_pdc_fair(
    i: Clustering,
    colors: ColorAssignment,
    profile: ColorProfile,
    on_iteration: Optional[IterationHook] = None,
) -> Clustering:
    """
    Turn a p-divisible clustering into a fair one.

    Colors are ordered by descending p_j (ties by color id); after iteration t the scaling
    factors c_j(C) / p_j agree within every block of the t-th level in every cluster.
    """
    check_consistent(i, colors)
    _check_profile(colors, profile)
    if not is_p_divisible(i, colors, profile):
        raise ValidationError("input clustering is not p-divisible")
    workspace = ClusterWorkspace.build(i, colors)
    metas = [MetaColor(((color, p),)) for color, p in enumerate(profile.p)]
    balance_meta_colors(workspace, metas, on_iteration)
    return workspace.to_clustering()


def fair_general(d: Clustering, colors: ColorAssignment) -> Clustering:
    """create_pdc followed by make_pdc_fair under the reduced global profile."""
    check_consistent(d, colors)
    if d.n == 0:
        return d
    profile = reduced_profile(colors)
    divisible = create_pdc(d, colors, profile)
    result = make_pdc_fair(divisible, colors, profile)
    if not is_fair(result, colors):
        raise InvariantError("fair_general produced an unfair clustering")
    return result
