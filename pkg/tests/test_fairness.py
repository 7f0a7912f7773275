import sys
from pathlib import Path

# Ensure src/ is on sys.path for local test runs
ROOT = Path(__file__).resolve().parents[1]
SRC = ROOT / "src"
if str(SRC) not in sys.path:
    sys.path.insert(0, str(SRC))

import pytest

from fairclust.core import Clustering
from fairclust.errors import ValidationError
from fairclust.fairness import (
    ColorAssignment,
    ColorProfile,
    color_histogram,
    deficit_count,
    deficit_size,
    is_fair,
    is_p_divisible,
    reduced_profile,
    surplus_count,
    surplus_pdc,
    unfair_clusters,
)

R, B = 0, 1


def colors_with_counts(*counts):
    return ColorAssignment.from_list([color for color, count in enumerate(counts) for _ in range(count)])


@pytest.mark.parametrize(
    "counts, p, g",
    [
        ((4, 4, 4), (1, 1, 1), 4),
        ((2, 4, 6), (1, 2, 3), 2),
        ((5, 3), (5, 3), 1),
    ],
)
def test_reduced_profile(counts, p, g):
    profile = reduced_profile(colors_with_counts(*counts))
    assert profile.p == p
    assert profile.g == g
    assert profile.unit_size == sum(p)


def test_color_assignment_rejects_empty_class():
    with pytest.raises(ValidationError, match="empty color class"):
        ColorAssignment.from_list([0, 2, 2])


def test_color_assignment_rejects_out_of_range_color():
    with pytest.raises(ValidationError):
        ColorAssignment.from_list([0, 1, 3], k=2)


def test_is_equi():
    assert colors_with_counts(3, 3, 3).is_equi
    assert not colors_with_counts(2, 4).is_equi


def test_profile_rejects_non_positive_entries():
    with pytest.raises(ValidationError):
        ColorProfile((1, 0), 2)


def test_is_fair_on_alternating_clusters():
    colors = ColorAssignment.from_list([R, R, B, B])
    assert is_fair(Clustering.from_clusters([{0, 2}, {1, 3}]), colors)


def test_monochromatic_clusters_are_unfair():
    colors = ColorAssignment.from_list([R, R, B, B])
    c = Clustering.from_clusters([{0, 1}, {2, 3}])
    assert not is_fair(c, colors)
    assert unfair_clusters(c, colors) == [0, 1]


def test_cluster_with_exact_global_ratio_is_fair():
    colors = colors_with_counts(2, 4, 6)
    # one cluster holding (1, 2, 3), the rest elsewhere
    c = Clustering.from_clusters([{0, 2, 3, 6, 7, 8}, {1, 4, 5, 9, 10, 11}])
    assert color_histogram(c, colors).table.tolist() == [[1, 2, 3], [1, 2, 3]]
    assert is_fair(c, colors)


def test_single_cluster_is_always_fair():
    colors = colors_with_counts(5, 3)
    assert is_fair(Clustering.single(8), colors)


def test_is_fair_rejects_mismatched_sizes():
    with pytest.raises(ValidationError):
        is_fair(Clustering.single(3), ColorAssignment.from_list([0, 1]))


def test_is_p_divisible():
    # histogram (4, 3) and (4, 2) against p = (2, 3)
    colors = colors_with_counts(8, 5)
    profile = ColorProfile((2, 3), 1)
    divisible = Clustering.from_clusters([{0, 1, 2, 3, 8, 9, 10}, {4, 5, 6, 7, 11, 12}])
    assert color_histogram(divisible, colors).table.tolist() == [[4, 3], [4, 2]]
    assert not is_p_divisible(divisible, colors, profile)
    assert is_p_divisible(Clustering.single(7), colors_with_counts(4, 3), profile)


def test_everything_is_divisible_by_ones():
    colors = colors_with_counts(3, 3, 3)
    c = Clustering.from_labels([0, 1, 2, 0, 1, 2, 2, 2, 0])
    assert is_p_divisible(c, colors, ColorProfile((1, 1, 1), 3))


def test_is_p_divisible_checks_profile_length():
    with pytest.raises(ValidationError):
        is_p_divisible(Clustering.single(4), colors_with_counts(2, 2), ColorProfile((1,), 4))


@pytest.mark.parametrize("count, p, expected", [(7, 3, 1), (6, 3, 3), (0, 5, 0), (2, 5, 2)])
def test_surplus_count(count, p, expected):
    assert surplus_count(count, p) == expected


@pytest.mark.parametrize("count, p, expected", [(7, 3, 2), (6, 3, 0), (2, 5, 3), (0, 5, 0)])
def test_deficit_count(count, p, expected):
    assert deficit_count(count, p) == expected


def test_surplus_pdc_takes_lowest_ids_of_the_color():
    colors = ColorAssignment.from_list([0] * 7 + [1] * 2)
    cluster = [8, 6, 5, 4, 3, 2, 1, 0, 7]
    assert surplus_pdc(cluster, 0, 3, colors) == frozenset({0})
    assert surplus_pdc(range(6), 0, 3, colors) == frozenset({0, 1, 2})
    assert surplus_pdc([7, 8], 0, 5, colors) == frozenset()


def test_deficit_size():
    colors = ColorAssignment.from_list([0] * 7 + [1] * 2)
    assert deficit_size(range(9), 0, 3, colors) == 2
    assert deficit_size(range(6), 0, 3, colors) == 0
    assert deficit_size([7, 8], 1, 5, colors) == 3
