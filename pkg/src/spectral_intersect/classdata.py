"""Class data on the intersection side: prefactor, dual times, B-hat, leg weights."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .algebra import TruncatedSeries, stirling_coefficient


class GenfunError(ArithmeticError):
    """B-hat numerator not divisible by (U + V)."""


@dataclass
class ClassData:
    """(p, t~_k, B^_{k,l}, leg weight) with p = e^{-t~_0}.

    ``leg_weight`` is a coefficient list [f_0, f_1, ...] of a series f(psi)
    applied on every external leg; ``None`` means 1.  ``valid_to`` records the
    truncation: correlators with d_{g,n} beyond it are refused.
    """

    p: object
    tt: Mapping[int, object]
    bhat: Mapping[tuple[int, int], object] = field(default_factory=dict)
    leg_weight: Sequence | None = None
    provenance: str = "user"
    valid_to: int | None = None  # largest d_{g,n} the truncated data supports; None = exact
    _memo: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self.tt = {k: v for k, v in self.tt.items() if v}
        bh = {k: v for k, v in self.bhat.items() if v}
        for (k, l), v in bh.items():
            if bh.get((l, k)) != v:
                raise ValueError(f"B-hat not symmetric at ({k},{l})")
        self.bhat = bh
        if self.leg_weight is not None:
            self.leg_weight = list(self.leg_weight)

    def t(self, k: int):
        return self.tt.get(k, 0)

    def check_degree(self, D: int) -> None:
        if self.valid_to is not None and D > self.valid_to:
            raise ValueError(f"class data truncated at degree {self.valid_to}, need {D}")

    def fingerprint(self) -> str:
        body = repr((str(self.p), sorted((k, str(v)) for k, v in self.tt.items()),
                     sorted((k, str(v)) for k, v in self.bhat.items()),
                     None if self.leg_weight is None else [str(c) for c in self.leg_weight]))
        return hashlib.sha256(body.encode()).hexdigest()[:16]


def bhat_genfun(tt: Mapping[int, object], K: int, zero=0) -> dict:
    """B^_{k,l} for k + l <= K from sum B^_{kl} U^k V^l = (1 - F(U) F(V)) / (U + V).

    F(U) = exp(-sum_k t~_k U^k).  Requires odd-only t~ so the numerator vanishes on V = -U.
    """
    N = K + 1
    g = TruncatedSeries([zero] + [-(tt.get(k, 0)) for k in range(1, N + 1)], 0, N)
    F = g.exp()
    f = [F.coefficient(a) for a in range(N + 1)]
    one = f[0]

    def num(a, b):
        v = -(f[a] * f[b])
        return v + one if a == 0 and b == 0 else v

    # divisibility: sum_{a+b=s} (-1)^a n_{a,b} = 0 for all s <= N
    for s in range(N + 1):
        acc = zero
        for a in range(s + 1):
            term = num(a, s - a)
            acc = acc + term if a % 2 == 0 else acc - term
        if acc != 0:
            raise GenfunError(f"numerator not divisible by U+V at total degree {s} "
                              "(even dual times present?)")
    Q = {}
    for s in range(K + 1):
        for a in range(s + 1):
            b = s - a
            v = num(a, b + 1)
            if a > 0:
                v = v - Q[(a - 1, b + 1)]
            Q[(a, b)] = v
    return {k: v for k, v in Q.items() if v}


def weight_from_times(tt: Mapping[int, object], K: int, zero=0) -> list:
    """Coefficients of exp(-sum t~_k psi^k) up to psi^K."""
    g = TruncatedSeries([zero] + [-(tt.get(k, 0)) for k in range(1, K + 1)], 0, K)
    e = g.exp()
    return [e.coefficient(k) for k in range(K + 1)]


def weight_from_bhat(bhat: Mapping[tuple[int, int], object], K: int, one=1) -> list:
    """1 - sum_k B^_{k,0} psi^{k+1}."""
    out = [one] + [0] * K
    for k in range(K):
        out[k + 1] = -bhat.get((k, 0), 0)
    return out


def hodge_times(alpha, K: int) -> dict:
    """t~ contribution of one Lambda(alpha) = sum_k (-1)^k alpha^-k lambda_k.

    Mumford: Lambda(alpha) = exp(-sum_k c_k alpha^{1-2k} [kappa_{2k-1} - sum psi^{2k-1} + boundary]).
    """
    if not alpha:
        raise ZeroDivisionError("Lambda(alpha) needs alpha != 0")
    out = {}
    k = 1
    while 2 * k - 1 <= K:
        out[2 * k - 1] = -stirling_coefficient(k) * alpha ** (1 - 2 * k)
        k += 1
    return out


def hodge_class(alphas: Sequence, K: int, zero=0) -> ClassData:
    """Class data of prod_j Lambda(alpha_j): kappa, leg and boundary parts of Mumford's exponent."""
    tt: dict = {}
    for a in alphas:
        for k, v in hodge_times(a, K).items():
            tt[k] = tt[k] + v if k in tt else v
    bhat = bhat_genfun(tt, max(K - 1, 0), zero)
    return ClassData(1, tt, bhat, weight_from_times(tt, K, zero),
                     provenance=f"hodge{tuple(str(a) for a in alphas)}", valid_to=K)


__all__ = ["ClassData", "GenfunError", "bhat_genfun", "hodge_class", "hodge_times",
           "weight_from_bhat", "weight_from_times"]
