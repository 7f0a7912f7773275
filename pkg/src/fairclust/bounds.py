"""
Approximation factors of the algorithms, as exact fractions.

Each helper returns the factor f such that the algorithm's distance (or cost) is at most
f times the optimum on every instance.
"""
from fractions import Fraction
from typing import Union

from .equi import binary_color_groups
from .errors import ValidationError

Number = Union[int, Fraction]


def _ceil_log2(value: int) -> int:
    if value < 1:
        raise ValidationError(f"expected a positive count, got {value}")
    return (value - 1).bit_length()


def power_of_two_bound(k: int) -> Fraction:
    """fair_power_of_two on k = 2^r colors: 3^r - 1."""
    return Fraction(3 ** _ceil_log2(k) - 1)


def make_pdc_fair_bound(r: int) -> Fraction:
    """make_pdc_fair on r (meta-)colors: 7^ceil(log2 r) - 1."""
    return Fraction(7 ** _ceil_log2(r) - 1)


def create_pdc_bound(k: int) -> Fraction:
    return Fraction(15, 2) * k


def general_bound(k: int) -> Fraction:
    """create_pdc composed with make_pdc_fair: a + b(a + 1)."""
    a = create_pdc_bound(k)
    return a + make_pdc_fair_bound(k) * (a + 1)


def fair_equi_bound(k: int) -> Fraction:
    """
    Per-group power-of-two balancing (constants summed over the groups) composed with the
    meta-color balancing over the groups.
    """
    groups = binary_color_groups(k)
    a = sum((power_of_two_bound(len(group)) for group in groups), Fraction(0))
    if len(groups) == 1:
        return a
    return a + make_pdc_fair_bound(len(groups)) * (a + 1)


def correlation_bound(gamma: Number, beta: Number) -> Fraction:
    gamma, beta = Fraction(gamma), Fraction(beta)
    return gamma + beta + gamma * beta


def consensus_bound(alpha: Number) -> Fraction:
    return Fraction(alpha) + 2


def ratio(value: int, optimum: int) -> Fraction:
    """value / optimum, with 0/0 read as 1; a positive value over a zero optimum is an error."""
    if optimum == 0:
        if value == 0:
            return Fraction(1)
        raise ValidationError(f"value {value} exceeds a zero optimum")
    return Fraction(value, optimum)
