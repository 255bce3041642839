"""From curve data to class data, closed-form class data, and the enumerative outputs."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .algebra import RatFunc, TruncatedSeries, double_factorial, stirling_coefficient
from .classdata import ClassData, bhat_genfun, weight_from_times
from .curves import LocalCurveData
from .intersect import boundary_class_correlator, kappa_psi_correlator, psi_correlator
from .toprec import dgn, is_stable


def dual_times(curve: LocalCurveData, K: int):
    """(p, {k: t~_k}) with S(u) = 2 sum (2k+1)!! 2^-k t_{2k+3} u^-k, p = 2 t_3, t~ = -log(S/p)."""
    t3 = curve.time(3)
    if not t3:
        raise ValueError("t_3 = 0: branchpoint is not regular")
    if 2 * K + 3 > curve.K_max:
        raise ValueError(f"t~_{K} needs t_{2 * K + 3}, beyond K_max={curve.K_max}")
    ring = curve.ring
    S = TruncatedSeries([ring.coerce(Fraction(double_factorial(2 * k + 1), 2 ** k)) * curve.time(2 * k + 3) / t3
                         for k in range(K + 1)], 0, K, var="U")
    L = (S - 1).log1p()
    return 2 * t3, {k: -L.coefficient(k) for k in range(1, K + 1)}


def bhat_from_B(curve: LocalCurveData, K: int | None = None) -> dict:
    """B^_{k,l} = (2k-1)!! (2l-1)!! 2^{-k-l-1} B_{2k,2l}; odd rows of B never enter."""
    top = curve.M_max // 2 if K is None else K
    out = {}
    for k in range(top + 1):
        for l in range(top + 1 - (0 if K is None else k)):
            if 2 * max(k, l) > curve.M_max:
                continue
            v = curve.bergman(2 * k, 2 * l)
            if v:
                out[(k, l)] = v * Fraction(double_factorial(2 * k - 1) * double_factorial(2 * l - 1),
                                           2 ** (k + l + 1))
    return out


def curve_class(curve: LocalCurveData, D: int) -> ClassData:
    """Class data of a curve, sufficient for every (g,n) with d_{g,n} <= D."""
    p, tt = dual_times(curve, D)
    bh = {k: v for k, v in bhat_from_B(curve).items() if k[0] + k[1] <= max(D - 1, 0)}
    return ClassData(p, tt, bh, provenance=f"schur-from-curve:{curve.fingerprint()}", valid_to=D)


# ------------------------------------------------------- closed forms

def _as_scalar(f):
    if isinstance(f, str):
        if f.strip() == "q":
            return RatFunc.q()
        return Fraction(f)
    if isinstance(f, int):
        return Fraction(f)
    return f


def vertex_times(f, K: int) -> dict:
    """t~_{2k-1} = c_k ((f+1)^{1-2k} - f^{1-2k} - 1), c_k = B_{2k}/(2k(2k-1)); even t~ vanish."""
    f = _as_scalar(f)
    if not f or not (f + 1):
        raise ValueError("framing must avoid 0 and -1")
    out = {}
    k = 1
    while 2 * k - 1 <= K:
        e = 1 - 2 * k
        out[2 * k - 1] = stirling_coefficient(k) * ((f + 1) ** e - f ** e - 1)
        k += 1
    return out


@dataclass
class SpecialClassData:
    cls: ClassData
    provenance: str
    p_squared: object = None


def vertex_class(f, K: int) -> SpecialClassData:
    """Framed vertex: closed-form t~, B^ from the generating function, e^{t~_0} = sqrt(f(f+1)/8)."""
    f = _as_scalar(f)
    tt = vertex_times(f, K)
    zero = f * 0
    bh = bhat_genfun(tt, max(K - 1, 0), zero)
    p2 = 8 / (f * (f + 1))
    cls = ClassData(1, tt, bh, weight_from_times(tt, K, zero), provenance=f"bernoulli-vertex({f})", valid_to=K)
    return SpecialClassData(cls, cls.provenance, p2)


def lambert_times(K: int) -> dict:
    """t~_{2k-1} = +B_{2k}/(2k(2k-1)); the sign is the one dual_times gives on the Lambert jets."""
    return {2 * k - 1: stirling_coefficient(k) for k in range(1, (K + 1) // 2 + 1)}


def lambert_class(K: int) -> SpecialClassData:
    tt = lambert_times(K)
    bh = bhat_genfun(tt, max(K - 1, 0))
    cls = ClassData(1, tt, bh, weight_from_times(tt, K), provenance="bernoulli-lambert(sign=+)", valid_to=K)
    return SpecialClassData(cls, cls.provenance, Fraction(-8))


# ------------------------------------------------------------ Hurwitz

def _poly_mul(a: list, b: list, top: int) -> list:
    out = [0] * (top + 1)
    for i, x in enumerate(a[:top + 1]):
        if x:
            for j, y in enumerate(b[:top + 1 - i]):
                if y:
                    out[i + j] += x * y
    return out


def elsv_hurwitz(g: int, mu: Sequence[int]) -> Fraction:
    """H_{g,mu} = (b!/|Aut mu|) prod mu^mu/mu! <Lambda(1) / prod (1 - mu_i psi_i)>_{g,n}."""
    mu = list(mu)
    if not mu or any((not isinstance(m, int)) or m < 1 for m in mu):
        raise ValueError(f"invalid partition {mu}")
    n = len(mu)
    d = sum(mu)
    b = 2 * g - 2 + n + d
    aut = 1
    for c in Counter(mu).values():
        aut *= factorial(c)
    pre = Fraction(factorial(b), aut)
    for m in mu:
        pre *= Fraction(m ** m, factorial(m))
    if not is_stable(g, n):
        # unstable conventions: int_{0,1} 1/(1-mu psi) = 1/mu^2, int_{0,2} = 1/(mu1+mu2)
        integral = Fraction(1, mu[0] ** 2) if n == 1 else Fraction(1, mu[0] + mu[1])
        return pre * integral
    from .classdata import hodge_class

    D = dgn(g, n)
    hodge = hodge_class([Fraction(1)], D + 1)
    weights = []
    for m in mu:
        geo = [Fraction(m) ** k for k in range(D + 1)]
        weights.append(_poly_mul(hodge.leg_weight, geo, D))
    return pre * boundary_class_correlator(g, [0] * n, hodge, leg_weights=weights)


def mv_coefficient(f: int, mu: int, d: int = 0) -> Fraction:
    """(mu(f+1))!/(mu! (f mu)!) (-mu)^d: weight times the psi^d coefficient of 1/(1 + mu psi)."""
    if not isinstance(f, int) or f < 1:
        raise ValueError("factorial form needs an integer framing f >= 1")
    if not isinstance(mu, int) or mu < 1:
        raise ValueError("mu must be a positive integer")
    return Fraction(factorial(mu * (f + 1)), factorial(mu) * factorial(f * mu)) * (-mu) ** d


def mv_residue_oracle(f: int, mu: int) -> Fraction:
    """-Res_{w->0} w^{-mu-1} (1-w)^{-mu f - 1}, computed with f formal then specialized."""
    q = RatFunc.q()
    # (1-w)^{-a} = sum_k binom(a+k-1, k) w^k, a = mu q + 1; coefficient of w^mu
    a = mu * q + 1
    coef = RatFunc.const(1)
    for j in range(mu):
        coef = coef * (a + j) * Fraction(1, j + 1)
    return -coef.subs(Fraction(f))


# ------------------------------------------------------- Weil-Petersson

def wp_volume(g: int, n: int) -> list:
    """Monomials (d0, d1..dn, coefficient) of V_{g,n} in (pi^2)^{d0} prod L_i^{2 d_i}."""
    if not is_stable(g, n):
        raise ValueError(f"(g,n)=({g},{n}) is unstable")
    D = dgn(g, n)
    out = []
    from .intersect import degree_tuples

    for ds in degree_tuples(n, D):
        d0 = D - sum(ds)
        val = kappa_psi_correlator(g, ds, [1] * d0)
        if not val:
            continue
        coef = Fraction(2 ** d0, factorial(d0)) * val
        for d in ds:
            coef /= 2 ** d * factorial(d)
        out.append((d0,) + tuple(ds) + (coef,))
    return out


def format_wp_polynomial(monomials: list) -> str:
    parts = []
    for mono in monomials:
        d0, ds, c = mono[0], mono[1:-1], mono[-1]
        factors = [str(c)]
        if d0:
            factors.append("pi^2" if d0 == 1 else f"pi^{2 * d0}")
        for i, d in enumerate(ds, 1):
            if d:
                factors.append(f"L{i}^{2 * d}")
        parts.append("*".join(factors))
    return " + ".join(parts) if parts else "0"


__all__ = [
    "dual_times", "bhat_from_B", "bhat_genfun", "curve_class", "vertex_times", "vertex_class",
    "lambert_times", "lambert_class", "SpecialClassData", "elsv_hurwitz", "mv_coefficient",
    "mv_residue_oracle", "wp_volume", "format_wp_polynomial", "psi_correlator",
]
