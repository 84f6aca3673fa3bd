"""Exact power sums 1^k + 2^k + ... + m^k via Faulhaber polynomials.

Bernoulli numbers are kept as exact rationals so every power sum is an
exact integer, which keeps the log-series evaluations free of any inner
O(m) loop.
"""

from __future__ import annotations

import math
from fractions import Fraction

MAX_ORDER = 64

_bernoulli_cache: list[Fraction] = [Fraction(1)]


def bernoulli(j: int) -> Fraction:
    """Bernoulli number B_j with the B_1 = -1/2 convention."""
    if j < 0:
        raise ValueError("Bernoulli index must be nonnegative")
    while len(_bernoulli_cache) <= j:
        i = len(_bernoulli_cache)
        acc = Fraction(0)
        for r in range(i):
            acc += math.comb(i + 1, r) * _bernoulli_cache[r]
        _bernoulli_cache.append(-acc / (i + 1))
    return _bernoulli_cache[j]


def power_sum(k: int, m: int) -> int:
    """Sum of i^k for i = 1..m, exactly.

    Faulhaber form: (1/(k+1)) * sum_j C(k+1, j) B_j^+ m^(k+1-j) where
    B^+ flips the sign of B_1.
    """
    if k < 0 or m < 0:
        raise ValueError("power_sum requires k >= 0 and m >= 0")
    if k > MAX_ORDER:
        raise ValueError(f"power_sum supports k <= {MAX_ORDER}")
    if m == 0:
        return 0
    if k == 0:
        return m
    acc = Fraction(0)
    powers = [m ** (k + 1 - j) for j in range(k + 1)]
    for j in range(k + 1):
        b = bernoulli(j)
        if j == 1:
            b = -b
        if b:
            acc += math.comb(k + 1, j) * b * powers[j]
    acc /= k + 1
    if acc.denominator != 1:
        raise AssertionError("power sum must be an integer")
    return acc.numerator
