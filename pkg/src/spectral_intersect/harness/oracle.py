"""Brute-force Hurwitz numbers by counting transposition factorizations."""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Sequence

MAX_DEGREE = 7


def cycle_type(perm: tuple) -> tuple:
    seen = [False] * len(perm)
    out = []
    for i in range(len(perm)):
        if seen[i]:
            continue
        n = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            n += 1
        out.append(n)
    return tuple(sorted(out, reverse=True))


def _merge(blocks: tuple, a: int, b: int) -> tuple:
    """Union of the blocks holding a and b; blocks are sorted tuples of frozensets."""
    ba = next(x for x in blocks if a in x)
    if b in ba:
        return blocks
    bb = next(x for x in blocks if b in x)
    rest = [x for x in blocks if x is not ba and x is not bb]
    rest.append(ba | bb)
    return tuple(sorted(rest, key=min))


def cut_join_oracle(g: int, mu: Sequence[int]) -> Fraction:
    """(1/d!) #{(tau_1..tau_b) transpositions : product has cycle type mu, <tau> transitive}.

    b = 2g - 2 + len(mu) + |mu|.  The walk keeps (product, connectivity partition)
    pairs with multiplicities, so the factorial blow-up only hits the state space.
    """
    mu = [int(m) for m in mu]
    if not mu or any(m < 1 for m in mu):
        raise ValueError(f"invalid partition {mu}")
    d = sum(mu)
    if d > MAX_DEGREE:
        raise ValueError(f"|mu| = {d} exceeds the oracle guard {MAX_DEGREE}")
    b = 2 * g - 2 + len(mu) + d
    if b < 0:
        return Fraction(0)
    target = tuple(sorted(mu, reverse=True))
    transpositions = list(combinations(range(d), 2))
    start = (tuple(range(d)), tuple(frozenset([i]) for i in range(d)))
    states = Counter({start: 1})
    for _ in range(b):
        nxt: Counter = Counter()
        for (perm, blocks), mult in states.items():
            for i, j in transpositions:
                p = list(perm)
                p[i], p[j] = p[j], p[i]
                nxt[(tuple(p), _merge(blocks, i, j))] += mult
        states = nxt
    count = sum(m for (perm, blocks), m in states.items()
                if len(blocks) == 1 and cycle_type(perm) == target)
    return Fraction(count, factorial(d))
