"""Combinatorial constants: double factorials and Bernoulli numbers."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb


def double_factorial(k: int) -> int:
    if k < -1:
        raise ValueError(f"double factorial undefined for {k}")
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


@lru_cache(maxsize=None)
def bernoulli(k: int) -> Fraction:
    """Bernoulli number B_k with the convention B_1 = -1/2."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return Fraction(1)
    if k > 1 and k % 2 == 1:
        return Fraction(0)
    # sum_{j<=k} C(k+1, j) B_j = 0
    acc = sum((comb(k + 1, j) * bernoulli(j) for j in range(k)), Fraction(0))
    return -acc / (k + 1)


def stirling_coefficient(k: int) -> Fraction:
    """B_{2k} / (2k (2k-1)), the coefficient of u^{1-2k} in log Gamma(u)."""
    if k < 1:
        raise ValueError("k >= 1")
    return bernoulli(2 * k) / (2 * k * (2 * k - 1))
