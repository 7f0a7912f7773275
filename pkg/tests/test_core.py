import sys
from itertools import combinations
from pathlib import Path

# Ensure src/ is on sys.path for local test runs
ROOT = Path(__file__).resolve().parents[1]
SRC = ROOT / "src"
if str(SRC) not in sys.path:
    sys.path.insert(0, str(SRC))

import numpy as np
import pytest

from fairclust.core import Clustering, normalize, pair_distance, pairs_within
from fairclust.errors import ValidationError


def brute_distance(a: Clustering, b: Clustering) -> int:
    return sum(
        1 for u, v in combinations(range(a.n), 2) if a.together(u, v) != b.together(u, v)
    )


def clusters_of(c: Clustering):
    return [sorted(cluster) for cluster in c.clusters]


def test_normalize_relabels_in_first_appearance_order():
    c = normalize({0: "a", 1: "a", 2: "b"})
    assert clusters_of(c) == [[0, 1], [2]]
    assert c.labels.tolist() == [0, 0, 1]


def test_normalize_first_label_seen_gets_index_zero():
    c = normalize({0: 7, 1: 3, 2: 7})
    assert clusters_of(c) == [[0, 2], [1]]
    assert c.labels.tolist() == [0, 1, 0]


def test_normalize_accepts_none_as_a_label():
    c = normalize({0: None, 1: "a", 2: None})
    assert clusters_of(c) == [[0, 2], [1]]


def test_normalize_empty_mapping():
    c = normalize({})
    assert c.n == 0
    assert c.num_clusters == 0
    assert clusters_of(c) == []


def test_normalize_is_idempotent_and_preserves_pairs():
    raw = {3: "x", 0: "y", 1: "x", 2: "z", 4: "y"}
    once = normalize(raw)
    twice = normalize(dict(enumerate(once.labels.tolist())))
    assert once == twice
    assert pair_distance(once, twice) == 0
    assert clusters_of(once) == [[0, 4], [1, 3], [2]]


def test_normalize_rejects_duplicate_point():
    with pytest.raises(ValidationError, match="duplicate"):
        normalize([(0, "a"), (0, "b")])


def test_normalize_rejects_missing_point():
    with pytest.raises(ValidationError, match="missing"):
        normalize({0: "a", 2: "b"})


def test_from_clusters_drops_empty_clusters():
    c = Clustering.from_clusters([[2], [], [0, 1]])
    assert clusters_of(c) == [[0, 1], [2]]
    assert c.num_clusters == 2


def test_equal_partitions_compare_equal():
    a = Clustering.from_labels([5, 5, 9, 9])
    b = Clustering.from_clusters([{0, 1}, {2, 3}])
    assert a == b
    assert hash(a) == hash(b)
    assert len({a, b}) == 1


def test_labels_are_read_only():
    c = Clustering.from_labels([0, 1, 0])
    with pytest.raises(ValueError):
        c.labels[0] = 1


def test_pair_distance_identity():
    c = Clustering.from_labels([0, 0, 1, 2, 2, 2])
    assert pair_distance(c, c) == 0


def test_pair_distance_small_example():
    # {{1,2},{3}} vs {{1},{2,3}} on points renumbered 0..2
    a = Clustering.from_clusters([{0, 1}, {2}])
    b = Clustering.from_clusters([{0}, {1, 2}])
    assert pair_distance(a, b) == 2


def test_pair_distance_singletons_vs_single_cluster():
    assert pair_distance(Clustering.singletons(4), Clustering.single(4)) == 6


def test_pair_distance_rejects_different_point_sets():
    with pytest.raises(ValidationError):
        pair_distance(Clustering.single(3), Clustering.single(4))


def test_pairs_within_exact_for_large_counts():
    counts = np.array([2 ** 31, 3, 1, 0], dtype=np.int64)
    assert pairs_within(counts) == (2 ** 31) * (2 ** 31 - 1) // 2 + 3


def test_pair_distance_matches_enumeration_on_random_pairs():
    rng = np.random.default_rng(7)
    for _ in range(200):
        n = int(rng.integers(1, 65))
        a = Clustering(rng.integers(0, int(rng.integers(1, n + 1)), size=n))
        b = Clustering(rng.integers(0, int(rng.integers(1, n + 1)), size=n))
        assert pair_distance(a, b) == brute_distance(a, b)


def test_pair_distance_is_a_metric_on_random_triples():
    rng = np.random.default_rng(11)
    for _ in range(200):
        n = int(rng.integers(1, 40))
        a, b, c = (Clustering(rng.integers(0, 6, size=n)) for _ in range(3))
        assert pair_distance(a, a) == 0
        assert pair_distance(a, b) == pair_distance(b, a)
        assert pair_distance(a, c) <= pair_distance(a, b) + pair_distance(b, c)
        assert 0 <= pair_distance(a, b) <= n * (n - 1) // 2
