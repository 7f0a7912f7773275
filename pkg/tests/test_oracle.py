import sys
from pathlib import Path

# Ensure src/ is on sys.path for local test runs
ROOT = Path(__file__).resolve().parents[1]
SRC = ROOT / "src"
if str(SRC) not in sys.path:
    sys.path.insert(0, str(SRC))

import pytest

from fairclust.consensus import ConsensusInstance, consensus_objective
from fairclust.core import Clustering, pair_distance
from fairclust.correlation import CorrelationInstance, cc_cost
from fairclust.errors import ValidationError
from fairclust.fairness import ColorAssignment, is_fair, is_p_divisible, reduced_profile
from fairclust.instances.generators import gen_correlation, gen_random
from fairclust.oracle import (
    bell_number,
    exact_cc,
    exact_closest_fair,
    exact_closest_pdc,
    exact_fair_cc,
    exact_fair_consensus,
    partitions,
)


@pytest.mark.parametrize("n, expected", [(0, 1), (1, 1), (2, 2), (3, 5), (4, 15), (5, 52), (6, 203), (10, 115975)])
def test_bell_number(n, expected):
    assert bell_number(n) == expected


def test_partitions_enumerates_each_partition_once():
    for n in range(6):
        seen = list(partitions(n))
        assert len(seen) == bell_number(n)
        assert len(set(seen)) == len(seen)


def test_partitions_start_with_single_cluster():
    first = next(iter(partitions(4)))
    assert first == Clustering.single(4)


def test_oracle_limit_from_environment(monkeypatch):
    monkeypatch.setenv("FAIRCLUST_ORACLE_LIMIT", "4")
    assert len(list(partitions(4))) == 15
    with pytest.raises(ValidationError, match="FAIRCLUST_ORACLE_LIMIT"):
        list(partitions(5))
    d, colors = gen_random(6, 2, seed=0)
    with pytest.raises(ValidationError):
        exact_closest_fair(d, colors)


def test_oracle_limit_above_ceiling_rejected(monkeypatch):
    monkeypatch.setenv("FAIRCLUST_ORACLE_LIMIT", "16")
    with pytest.raises(ValidationError):
        list(partitions(2))


def test_exact_closest_fair_small_example():
    colors = ColorAssignment.from_list([0, 0, 1, 1])
    d = Clustering.from_labels([0, 0, 0, 1])
    best, distance = exact_closest_fair(d, colors)
    assert distance == 3
    assert is_fair(best, colors)
    assert pair_distance(d, best) == 3


def test_exact_closest_fair_of_fair_input_is_itself():
    colors = ColorAssignment.from_list([0, 1, 0, 1])
    d = Clustering.from_clusters([{0, 1}, {2, 3}])
    assert exact_closest_fair(d, colors) == (d, 0)


def test_exact_closest_fair_single_color():
    d = Clustering.from_labels([0, 1, 1])
    assert exact_closest_fair(d, ColorAssignment.from_list([0, 0, 0])) == (d, 0)


def test_exact_closest_fair_matches_enumeration():
    for seed in range(4):
        d, colors = gen_random(7, 2, ratio=[3, 4], seed=seed, clusters=3)
        _, distance = exact_closest_fair(d, colors)
        brute = min(pair_distance(d, c) for c in partitions(7) if is_fair(c, colors))
        assert distance == brute


def test_exact_closest_pdc_matches_enumeration():
    for seed in range(4):
        d, colors = gen_random(6, 2, ratio=[1, 2], seed=seed, clusters=3)
        profile = reduced_profile(colors)
        best, distance = exact_closest_pdc(d, colors, profile)
        assert is_p_divisible(best, colors, profile)
        brute = min(pair_distance(d, c) for c in partitions(6) if is_p_divisible(c, colors, profile))
        assert distance == brute


def test_exact_cc_small_example():
    inst = CorrelationInstance.from_edges(3, [(0, 1), (0, 2)])
    best, cost = exact_cc(inst)
    assert cost == 1
    assert cc_cost(inst, best) == 1


def test_exact_cc_matches_enumeration():
    for seed in range(3):
        inst, colors, _ = gen_correlation(7, 1, noise=0.3, seed=seed)
        _, cost = exact_cc(inst)
        assert cost == min(cc_cost(inst, c) for c in partitions(7))
        _, fair_cost = exact_fair_cc(inst, colors)
        assert fair_cost == cost


def test_exact_fair_cc_respects_colors():
    inst, colors, _ = gen_correlation(6, 2, noise=0.2, seed=4)
    best, cost = exact_fair_cc(inst, colors)
    assert is_fair(best, colors)
    assert cost == min(cc_cost(inst, c) for c in partitions(6) if is_fair(c, colors))


def test_exact_fair_consensus_matches_enumeration():
    colors = ColorAssignment.from_list([0, 1, 0, 1, 0, 1])
    inputs = (
        Clustering.from_labels([0, 0, 0, 1, 1, 1]),
        Clustering.from_labels([0, 1, 0, 1, 0, 1]),
        Clustering.from_labels([0, 0, 1, 1, 2, 2]),
    )
    for norm in (1, 2, "center"):
        inst = ConsensusInstance(inputs, norm)
        best, objective = exact_fair_consensus(inst, colors)
        assert is_fair(best, colors)
        brute = min(consensus_objective(inst, c) for c in partitions(6) if is_fair(c, colors))
        assert objective == pytest.approx(brute)
