"""
Exact solvers for small instances, by exhaustive search over all set partitions.

Partitions are enumerated as restricted-growth strings: point i goes to one of the blocks
already opened by points 0..i-1 or opens the next one. The solvers walk that tree depth
first, add each point's cost contribution incrementally, and cut every branch whose partial
cost already reaches the best complete solution found so far. Costs never decrease along a
branch and only strict improvements replace the incumbent, so the returned optimum is the
first optimal partition in enumeration order.

The number of points is capped by get_oracle_limit() (FAIRCLUST_ORACLE_LIMIT).
"""
import logging
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .config import get_oracle_limit
from .consensus import ConsensusInstance, combine, consensus_objective
from .core import Clustering, PairDistance, check_same_points
from .correlation import CorrelationInstance
from .errors import ValidationError
from .fairness import ColorAssignment, ColorProfile, check_consistent, reduced_profile

logger = logging.getLogger(__name__)

ClusterPredicate = Callable[[Sequence[int]], bool]


def check_oracle_size(n: int) -> None:
    limit = get_oracle_limit()
    if n > limit:
        raise ValidationError(
            f"exhaustive search is limited to n <= {limit} points, got n={n} "
            f"(raise FAIRCLUST_ORACLE_LIMIT up to 15 to allow more)"
        )


def bell_number(n: int) -> int:
    """Number of set partitions of n elements, via the Bell triangle."""
    if n < 0:
        raise ValidationError(f"n must be non-negative, got {n}")
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for value in row:
            nxt.append(nxt[-1] + value)
        row = nxt
    return row[0]


class PartitionIterator:
    """Cursor over the restricted-growth strings of length n, in lexicographic order."""

    def __init__(self, n: int):
        if n < 0:
            raise ValidationError(f"n must be non-negative, got {n}")
        check_oracle_size(n)
        self.n = n
        self._rgs: Optional[List[int]] = None
        self._prefix_max: List[int] = []
        self._done = False

    def __iter__(self) -> "PartitionIterator":
        return self

    def _current(self) -> Clustering:
        return Clustering(np.array(self._rgs, dtype=np.int64))

    def __next__(self) -> Clustering:
        if self._done:
            raise StopIteration
        if self._rgs is None:
            self._rgs = [0] * self.n
            self._prefix_max = [0] * self.n
            return self._current()

        rgs, prefix_max = self._rgs, self._prefix_max
        for i in range(self.n - 1, 0, -1):
            if rgs[i] <= prefix_max[i - 1]:
                rgs[i] += 1
                prefix_max[i] = max(prefix_max[i - 1], rgs[i])
                for j in range(i + 1, self.n):
                    rgs[j] = 0
                    prefix_max[j] = prefix_max[i]
                return self._current()
        self._done = True
        raise StopIteration


def partitions(n: int) -> Iterator[Clustering]:
    """Every partition of 0..n-1 exactly once."""
    yield from PartitionIterator(n)


# -- incremental cost terms --------------------------------------------------------------

class _DistanceTerm:
    """Pair distance to a reference clustering."""

    def __init__(self, reference: Clustering):
        self.reference = reference.labels.tolist()
        n = len(self.reference)
        self.inside: List[Dict[int, int]] = [{} for _ in range(n)]
        self.seen: Dict[int, int] = {}

    def delta(self, i: int, block: int, search: "_Search") -> int:
        label = self.reference[i]
        inside = self.inside[block].get(label, 0)
        return search.sizes[block] - inside + self.seen.get(label, 0) - inside

    def place(self, i: int, block: int) -> None:
        label = self.reference[i]
        self.inside[block][label] = self.inside[block].get(label, 0) + 1
        self.seen[label] = self.seen.get(label, 0) + 1

    def remove(self, i: int, block: int) -> None:
        label = self.reference[i]
        self.inside[block][label] -= 1
        self.seen[label] -= 1


class _CorrelationTerm:
    """Disagreements with a signed complete graph."""

    def __init__(self, inst: CorrelationInstance):
        self.earlier = [sorted(j for j in inst.neighbors[i] if j < i) for i in range(inst.n)]

    def delta(self, i: int, block: int, search: "_Search") -> int:
        earlier = self.earlier[i]
        plus_inside = sum(1 for j in earlier if search.assign[j] == block)
        return (search.sizes[block] - plus_inside) + (len(earlier) - plus_inside)

    def place(self, i: int, block: int) -> None:
        pass

    def remove(self, i: int, block: int) -> None:
        pass


class _Search:
    """Depth-first branch and bound over restricted-growth strings."""

    def __init__(self, n: int, terms: Sequence, score: Callable[[Sequence[int]], int],
                 predicate: Optional[ClusterPredicate] = None):
        self.n = n
        self.terms = list(terms)
        self.score = score
        self.predicate = predicate
        self.assign = [-1] * n
        self.sizes = [0] * (n + 1)
        self.blocks = 0
        self.best_score: Optional[int] = None
        self.best_assign: Optional[List[int]] = None
        self.leaves = 0

    def _accept(self) -> bool:
        if self.predicate is None:
            return True
        members: List[List[int]] = [[] for _ in range(self.blocks)]
        for point, block in enumerate(self.assign):
            members[block].append(point)
        return all(self.predicate(cluster) for cluster in members)

    def _dfs(self, i: int, partial: Tuple[int, ...]) -> None:
        if i == self.n:
            self.leaves += 1
            value = self.score(partial)
            if (self.best_score is None or value < self.best_score) and self._accept():
                self.best_score = value
                self.best_assign = list(self.assign)
            return
        for block in range(self.blocks + 1):
            extended = tuple(p + term.delta(i, block, self) for p, term in zip(partial, self.terms))
            if self.best_score is not None and self.score(extended) >= self.best_score:
                continue
            opened = block == self.blocks
            self.assign[i] = block
            self.sizes[block] += 1
            if opened:
                self.blocks += 1
            for term in self.terms:
                term.place(i, block)

            self._dfs(i + 1, extended)

            for term in self.terms:
                term.remove(i, block)
            if opened:
                self.blocks -= 1
            self.sizes[block] -= 1
            self.assign[i] = -1

    def run(self) -> Tuple[Clustering, int]:
        check_oracle_size(self.n)
        self._dfs(0, tuple(0 for _ in self.terms))
        if self.best_assign is None:
            raise ValidationError("no partition satisfies the constraint")
        logger.debug(f"oracle: n={self.n}, {self.leaves} leaves visited, optimum {self.best_score}")
        return Clustering(np.array(self.best_assign, dtype=np.int64)), int(self.best_score)


def _single(partial: Sequence[int]) -> int:
    return partial[0]


def fair_predicate(colors: ColorAssignment) -> ClusterPredicate:
    """Cluster test: color counts are an integer multiple of the reduced profile."""
    p = reduced_profile(colors).p
    color_of = colors.colors.tolist()

    def is_fair_cluster(cluster: Sequence[int]) -> bool:
        counts = [0] * len(p)
        for point in cluster:
            counts[color_of[point]] += 1
        scale = counts[0] // p[0] if p else 0
        return all(c == scale * q for c, q in zip(counts, p))

    return is_fair_cluster


def pdc_predicate(colors: ColorAssignment, profile: ColorProfile) -> ClusterPredicate:
    """Cluster test: every color count is a multiple of its profile entry."""
    if profile.k != colors.k:
        raise ValidationError(f"profile has {profile.k} entries for {colors.k} colors")
    p = profile.p
    color_of = colors.colors.tolist()

    def is_divisible_cluster(cluster: Sequence[int]) -> bool:
        counts = [0] * len(p)
        for point in cluster:
            counts[color_of[point]] += 1
        return all(c % q == 0 for c, q in zip(counts, p))

    return is_divisible_cluster


def exact_closest(d: Clustering, predicate: Optional[ClusterPredicate] = None) -> Tuple[Clustering, PairDistance]:
    """Partition closest to d among those whose every cluster passes `predicate`."""
    return _Search(d.n, [_DistanceTerm(d)], _single, predicate).run()


def exact_closest_fair(d: Clustering, colors: ColorAssignment) -> Tuple[Clustering, PairDistance]:
    check_consistent(d, colors)
    if colors.k <= 1:
        check_oracle_size(d.n)
        return d, 0
    return exact_closest(d, fair_predicate(colors))


def exact_closest_pdc(
    d: Clustering, colors: ColorAssignment, profile: ColorProfile
) -> Tuple[Clustering, PairDistance]:
    check_consistent(d, colors)
    return exact_closest(d, pdc_predicate(colors, profile))


def exact_cc(inst: CorrelationInstance) -> Tuple[Clustering, int]:
    """Unconstrained correlation-clustering optimum."""
    return _Search(inst.n, [_CorrelationTerm(inst)], _single).run()


def exact_fair_cc(inst: CorrelationInstance, colors: ColorAssignment) -> Tuple[Clustering, int]:
    if colors.n != inst.n:
        raise ValidationError(f"{colors.n} colored points for {inst.n} nodes")
    return _Search(inst.n, [_CorrelationTerm(inst)], _single, fair_predicate(colors)).run()


def exact_fair_consensus(inst: ConsensusInstance, colors: ColorAssignment) -> Tuple[Clustering, float]:
    """Fair partition with the smallest consensus objective."""
    check_consistent(inst.inputs[0], colors)
    terms = [_DistanceTerm(x) for x in inst.inputs]
    best, _ = _Search(inst.n, terms, lambda partial: combine(inst, partial), fair_predicate(colors)).run()
    check_same_points(inst.inputs[0], best)
    return best, consensus_objective(inst, best)
