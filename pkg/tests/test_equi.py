import sys
from collections import Counter
from pathlib import Path

# Ensure src/ is on sys.path for local test runs
ROOT = Path(__file__).resolve().parents[1]
SRC = ROOT / "src"
if str(SRC) not in sys.path:
    sys.path.insert(0, str(SRC))

import pytest

from fairclust.bounds import fair_equi_bound, power_of_two_bound, ratio
from fairclust.core import Clustering, pair_distance
from fairclust.equi import (
    binary_color_groups,
    block_schedule,
    fair_equi,
    fair_power_of_two,
    multi_gm,
    surplus_equi,
)
from fairclust.errors import ValidationError
from fairclust.fairness import ColorAssignment, color_histogram, is_fair
from fairclust.instances.generators import gen_random
from fairclust.oracle import exact_closest, exact_closest_fair


def test_block_schedule_four_colors():
    schedule = block_schedule(4)
    assert schedule.iterations == 2
    assert schedule.blocks(1) == ((0, 1), (2, 3))
    assert schedule.blocks(2) == ((0, 1, 2, 3),)
    assert schedule.pairs(1) == [((0,), (1,)), ((2,), (3,))]


def test_block_schedule_trivial_sizes():
    assert block_schedule(1).iterations == 0
    two = block_schedule(2)
    assert two.iterations == 1
    assert two.pairs(1) == [((0,), (1,))]


def test_block_schedule_carries_odd_block():
    schedule = block_schedule(3)
    assert schedule.blocks(1) == ((0, 1), (2,))
    assert schedule.carried(1) == (2,)
    assert schedule.pairs(2) == [((0, 1), (2,))]


def test_surplus_equi_sheds_excess_of_larger_block():
    colors = ColorAssignment.from_list([0, 0, 1, 1, 2, 3, 2, 3])
    cluster = [0, 1, 2, 3, 4, 5]
    assert surplus_equi(cluster, (0, 1), (2, 3), colors) == frozenset({0, 2})


def test_surplus_equi_balanced_is_empty():
    colors = ColorAssignment.from_list([0, 1, 0, 1])
    assert surplus_equi([0, 1], (0,), (1,), colors) == frozenset()


def test_surplus_equi_from_second_block():
    colors = ColorAssignment.from_list([0, 1] * 3 + [2, 3] * 3)
    # block A empty, block B holds 3 points of each of its 2 colors
    cluster = list(range(6, 12))
    assert surplus_equi(cluster, (0, 1), (2, 3), colors) == frozenset(cluster)


def test_multi_gm_splits_larger_set():
    colors = ColorAssignment.from_list([0, 0, 1, 1, 2, 3, 2, 3])
    merged = multi_gm([{0, 1, 2, 3}], [{4, 5}, {6, 7}], colors)
    assert merged == [frozenset({0, 2, 4, 5}), frozenset({1, 3, 6, 7})]


def test_multi_gm_equal_sets_merge_whole():
    colors = ColorAssignment.from_list([0, 1])
    assert multi_gm([{0}], [{1}], colors) == [frozenset({0, 1})]


def test_multi_gm_empty_sides():
    colors = ColorAssignment.from_list([0, 1])
    assert multi_gm([], [], colors) == []


def test_fair_power_of_two_leaves_fair_input_alone():
    colors = ColorAssignment.from_list([0, 1, 0, 1])
    d = Clustering.from_clusters([{0, 1}, {2, 3}])
    assert fair_power_of_two(d, colors) == d


def test_fair_power_of_two_two_colors():
    # D = {{r, r, b}, {b}}
    colors = ColorAssignment.from_list([0, 0, 1, 1])
    d = Clustering.from_labels([0, 0, 0, 1])
    f = fair_power_of_two(d, colors)
    assert is_fair(f, colors)
    assert sorted(sorted(c) for c in f.clusters) == [[0, 3], [1, 2]]
    assert pair_distance(d, f) == 3
    assert exact_closest_fair(d, colors)[1] == 3


def test_fair_power_of_two_blocks_balanced_after_each_iteration():
    d, colors = gen_random(16, 4, seed=3, clusters=3)
    seen = []

    def check(i, clustering):
        table = color_histogram(clustering, colors).table
        for block in block_schedule(4).blocks(i):
            assert (table[:, list(block)] == table[:, [block[0]]]).all()
        seen.append(i)

    f = fair_power_of_two(d, colors, on_iteration=check)
    assert seen == [1, 2]
    assert is_fair(f, colors)


def balanced_within(colors, blocks):
    color_of = colors.colors.tolist()

    def predicate(cluster):
        counts = Counter(color_of[point] for point in cluster)
        return all(len({counts[j] for j in block}) == 1 for block in blocks)

    return predicate


@pytest.mark.parametrize("k, n", [(2, 8), (4, 8)])
def test_fair_power_of_two_step_and_cumulative_bounds(k, n):
    schedule = block_schedule(k)
    for seed in range(8):
        d, colors = gen_random(n, k, seed=seed, clusters=3)
        history = [d]
        fair_power_of_two(d, colors, on_iteration=lambda i, c: history.append(c))
        assert len(history) == schedule.iterations + 1
        for i in range(1, len(history)):
            balanced = balanced_within(colors, schedule.blocks(i))
            _, step_optimum = exact_closest(history[i - 1], balanced)
            assert pair_distance(history[i - 1], history[i]) <= 2 * step_optimum
            _, optimum = exact_closest(d, balanced)
            assert pair_distance(d, history[i]) <= (3 ** i - 1) * optimum


def test_fair_outputs_conserve_color_totals():
    for k in (2, 3, 4, 5):
        for seed in range(10):
            d, colors = gen_random(6 * k, k, seed=seed, clusters=1 + seed % 5)
            f = fair_equi(d, colors)
            assert is_fair(f, colors)
            assert color_histogram(f, colors).color_totals.tolist() == colors.counts.tolist()


def test_fair_power_of_two_rejects_non_power_of_two():
    d, colors = gen_random(6, 3, seed=1)
    with pytest.raises(ValidationError, match="power of two"):
        fair_power_of_two(d, colors)


def test_fair_power_of_two_rejects_unequal_classes():
    colors = ColorAssignment.from_list([0, 0, 1])
    with pytest.raises(ValidationError):
        fair_power_of_two(Clustering.single(3), colors)


@pytest.mark.parametrize("k, n", [(2, 8), (4, 8)])
def test_fair_power_of_two_within_bound_of_optimum(k, n):
    bound = power_of_two_bound(k)
    for seed in range(6):
        d, colors = gen_random(n, k, seed=seed, clusters=3)
        f = fair_power_of_two(d, colors)
        assert is_fair(f, colors)
        _, optimum = exact_closest_fair(d, colors)
        assert ratio(pair_distance(d, f), optimum) <= bound


def test_one_cluster_per_color_pair():
    colors = ColorAssignment.from_list([0, 1, 2, 3, 0, 1, 2, 3])
    d = Clustering.from_clusters([{0, 1}, {2, 3}, {4, 5}, {6, 7}])
    f = fair_power_of_two(d, colors)
    assert is_fair(f, colors)
    _, optimum = exact_closest_fair(d, colors)
    assert pair_distance(d, f) <= 8 * optimum


@pytest.mark.parametrize("k, sizes", [(5, [4, 1]), (8, [8]), (7, [4, 2, 1]), (1, [1])])
def test_binary_color_groups(k, sizes):
    groups = binary_color_groups(k)
    assert [len(g) for g in groups] == sizes
    assert [j for g in groups for j in g] == list(range(k))


def test_fair_equi_single_color_is_identity():
    d = Clustering.from_labels([0, 1, 1, 2])
    assert fair_equi(d, ColorAssignment.from_list([0, 0, 0, 0])) == d


def test_fair_equi_keeps_fair_input():
    colors = ColorAssignment.from_list([0, 1, 2, 0, 1, 2])
    d = Clustering.from_clusters([{0, 1, 2}, {3, 4, 5}])
    assert fair_equi(d, colors) == d


def test_fair_equi_three_colors_within_composed_bound():
    bound = fair_equi_bound(3)
    for seed in range(5):
        d, colors = gen_random(9, 3, seed=seed, clusters=3)
        f = fair_equi(d, colors)
        assert is_fair(f, colors)
        _, optimum = exact_closest_fair(d, colors)
        assert ratio(pair_distance(d, f), optimum) <= bound


def test_fair_equi_handles_larger_instances():
    for k in (3, 5, 6, 7):
        d, colors = gen_random(20 * k, k, seed=k, clusters=6)
        f = fair_equi(d, colors)
        assert is_fair(f, colors)
        assert f.n == d.n
