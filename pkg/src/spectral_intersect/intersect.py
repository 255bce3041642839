"""Intersection numbers of psi, kappa, boundary and Hodge classes on M_{g,n}-bar."""

from __future__ import annotations

import threading
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Sequence

from .algebra import double_factorial
from .classdata import ClassData, hodge_class
from .toprec import CorrelatorTensor, dgn, is_stable

_LOCK = threading.Lock()
PSI_CACHE: dict = {}
KAPPA_CACHE: dict = {}


def _remember(cache: dict, key, value):
    with _LOCK:
        cache.setdefault(key, value)
    return value


# ------------------------------------------------------------------ psi

def psi_correlator(g: int, ds: Sequence[int]) -> Fraction:
    """<tau_{d_1} ... tau_{d_n}>_g."""
    ds = tuple(sorted(ds, reverse=True))
    n = len(ds)
    if g < 0 or not is_stable(g, n) or (ds and ds[-1] < 0) or sum(ds) != dgn(g, n):
        return Fraction(0)
    key = (g, ds)
    hit = PSI_CACHE.get(key)
    if hit is not None:
        return hit
    if key == (0, (0, 0, 0)):
        return _remember(PSI_CACHE, key, Fraction(1))
    if key == (1, (1,)):
        return _remember(PSI_CACHE, key, Fraction(1, 24))
    d0, rest = ds[0], ds[1:]
    total = Fraction(0)
    for j, dj in enumerate(rest):
        others = rest[:j] + rest[j + 1:]
        total += Fraction(double_factorial(2 * d0 + 2 * dj - 1), double_factorial(2 * dj - 1)) \
            * psi_correlator(g, (d0 + dj - 1,) + others)
    quad = Fraction(0)
    for a in range(d0 - 1):
        b = d0 - 2 - a
        w = double_factorial(2 * a + 1) * double_factorial(2 * b + 1)
        part = psi_correlator(g - 1, (a, b) + rest)
        idx = range(len(rest))
        for size in range(len(rest) + 1):
            for I in combinations(idx, size):
                left = tuple(rest[i] for i in I)
                right = tuple(rest[i] for i in idx if i not in I)
                for g1 in range(g + 1):
                    part += psi_correlator(g1, (a,) + left) * psi_correlator(g - g1, (b,) + right)
        quad += w * part
    total += quad / 2
    return _remember(PSI_CACHE, key, total / double_factorial(2 * d0 + 1))


# ---------------------------------------------------------------- kappa

def kappa_psi_correlator(g: int, ds: Sequence[int], kappas: Sequence[int]) -> Fraction:
    """<prod tau_{d_i} prod kappa_{b_j}>_{g,n}, b_j >= 1."""
    if any(b < 1 for b in kappas):
        raise ValueError("kappa indices must be >= 1 (kappa_0 is carried by the prefactor)")
    ds = tuple(sorted(ds, reverse=True))
    ks = tuple(sorted(kappas, reverse=True))
    n = len(ds)
    if not is_stable(g, n) or (ds and ds[-1] < 0) or sum(ds) + sum(ks) != dgn(g, n):
        return Fraction(0)
    if not ks:
        return psi_correlator(g, ds)
    key = (g, ds, ks)
    hit = KAPPA_CACHE.get(key)
    if hit is not None:
        return hit
    # projection formula: kappa_b = pi_* psi_{n+1}^{b+1} and pi^* kappa_c = kappa_c - psi_{n+1}^c
    b, rest = ks[0], ks[1:]
    value = Fraction(0)
    for size in range(len(rest) + 1):
        for A in combinations(range(len(rest)), size):
            shift = b + 1 + sum(rest[i] for i in A)
            kept = tuple(rest[i] for i in range(len(rest)) if i not in A)
            term = kappa_psi_correlator(g, ds + (shift,), kept)
            value += -term if size % 2 else term
    return _remember(KAPPA_CACHE, key, value)


def _partitions(total: int, allowed: Sequence[int], start: int = 0):
    """Multisets (as count dicts) of ``allowed`` parts summing to ``total``."""
    if total == 0:
        yield {}
        return
    for i in range(start, len(allowed)):
        k = allowed[i]
        if k > total:
            continue
        for sub in _partitions(total - k, allowed, i):
            out = dict(sub)
            out[k] = out.get(k, 0) + 1
            yield out


def kappa_class_correlator(g: int, ds: Sequence[int], tt, extra: Sequence[int] = ()) -> object:
    """<prod psi^{d_i} prod kappa_{extra} exp(sum_k t~_k kappa_k)>_{g,n}."""
    n = len(ds)
    R = dgn(g, n) - sum(ds) - sum(extra)
    if not is_stable(g, n) or R < 0 or any(d < 0 for d in ds):
        return 0
    allowed = sorted((k for k, v in tt.items() if v and k <= R), reverse=True)
    total = 0
    for parts in _partitions(R, allowed):
        coef = 1
        kappas = list(extra)
        for k, m in parts.items():
            coef = coef * tt[k] ** m * Fraction(1, factorial(m))
            kappas.extend([k] * m)
        val = kappa_psi_correlator(g, ds, kappas)
        if val:
            total = total + coef * val
    return total


# ------------------------------------------------------------- boundary

def _unweighted(cls: ClassData, g: int, legs: tuple, m: int):
    """B^-degree-m part of <prod psi^{d_i} e^{t~ kappa} e^{(1/2) l_* B^}>_g (leg weights 1)."""
    n = len(legs)
    if not is_stable(g, n) or any(d < 0 for d in legs):
        return 0
    D = dgn(g, n)
    if sum(legs) + m > D:
        return 0
    legs = tuple(sorted(legs, reverse=True))
    key = ("U", g, legs, m)
    memo = cls._memo
    if key in memo:
        return memo[key]
    if m == 0:
        value = kappa_class_correlator(g, legs, cls.tt)
        memo[key] = value
        return value
    budget = D - sum(legs) - m  # room left for psi powers on inserted half-edges
    total = 0
    positions = range(n)
    for (k, l), b in cls.bhat.items():
        if k + l > budget:
            continue
        term = 0
        if g >= 1:
            term = term + _unweighted(cls, g - 1, legs + (k, l), m - 1)
        for size in range(n + 1):
            for I in combinations(positions, size):
                left = tuple(legs[i] for i in I) + (k,)
                right = tuple(legs[i] for i in positions if i not in I) + (l,)
                for h in range(g + 1):
                    if not is_stable(h, len(left)) or not is_stable(g - h, len(right)):
                        continue
                    for m1 in range(m):
                        a = _unweighted(cls, h, left, m1)
                        if not a:
                            continue
                        c = _unweighted(cls, g - h, right, m - 1 - m1)
                        if c:
                            term = term + a * c
        if term:
            total = total + b * term
    value = total * Fraction(1, 2 * m) if total else 0
    memo[key] = value
    return value


def unweighted_correlator(cls: ClassData, g: int, ds: Sequence[int]):
    n = len(ds)
    D = dgn(g, n)
    total = 0
    for m in range(0, max(D - sum(ds), 0) + 1):
        v = _unweighted(cls, g, tuple(ds), m)
        if v:
            total = total + v
    return total


def _apply_weights(g: int, ds: Sequence[int], weights: Sequence, evaluate):
    n = len(ds)
    D = dgn(g, n)
    room = D - sum(ds)
    if room < 0:
        return 0
    total = 0

    def rec(i, left, shifted, coef):
        nonlocal total
        if i == n:
            v = evaluate(tuple(shifted))
            if v:
                total = total + coef * v
            return
        w = weights[i]
        for e in range(0, min(left, len(w) - 1) + 1):
            c = w[e]
            if c:
                rec(i + 1, left - e, shifted + [ds[i] + e], coef * c)

    rec(0, room, [], 1)
    return total


def boundary_class_correlator(g: int, ds: Sequence[int], cls: ClassData,
                              leg_weights: Sequence[Sequence] | None = None):
    """T^(g)_n(d) = <prod psi^{d_i} f_i(psi_i) e^{t~ kappa} e^{(1/2) l_* B^}>_{g,n}.

    ``leg_weights`` (one coefficient list per leg) overrides the class's common weight.
    """
    n = len(ds)
    if not is_stable(g, n):
        return 0
    cls.check_degree(dgn(g, n))
    if leg_weights is None and cls.leg_weight is not None:
        leg_weights = [cls.leg_weight] * n
    if leg_weights is None:
        return unweighted_correlator(cls, g, ds)
    if len(leg_weights) != n:
        raise ValueError("one leg weight per leg")
    return _apply_weights(g, ds, leg_weights, lambda sh: unweighted_correlator(cls, g, sh))


def hodge_class_correlator(g: int, ds: Sequence[int], alphas: Sequence, zero=0):
    """<prod psi^{d_i} prod_j Lambda(alpha_j)>, Lambda(alpha) = sum_k (-1)^k alpha^-k lambda_k."""
    K = dgn(g, len(ds)) + 1
    cls = hodge_class(alphas, K, zero)
    return boundary_class_correlator(g, ds, cls)


# --------------------------------------------------------- main formula

def degree_tuples(n: int, total_max: int):
    """All ordered n-tuples of nonnegative integers with sum <= total_max."""
    if n == 0:
        yield ()
        return
    for d in range(total_max + 1):
        for rest in degree_tuples(n - 1, total_max - d):
            yield (d,) + rest


def mainformula_tensor(g: int, n: int, cls: ClassData) -> CorrelatorTensor:
    """C(d) = 2^{d_{g,n}} p^{-(2g-2+n)} T^(g)_n(d)."""
    if not is_stable(g, n):
        raise ValueError(f"(g,n)=({g},{n}) is unstable")
    D = dgn(g, n)
    scale = Fraction(2) ** D / cls.p ** (2 * g - 2 + n)
    out = CorrelatorTensor(g, n)
    sym: dict = {}
    for degs in degree_tuples(n, D):
        key = tuple(sorted(degs))
        if key not in sym:
            sym[key] = boundary_class_correlator(g, key, cls)
        v = sym[key]
        if v:
            out.data[degs] = v * scale
    return out


def mainformula_free_energy(g: int, cls: ClassData):
    """F_g = 2^{3g-3} p^{2-2g} <e^{t~ kappa} e^{(1/2) l_* B^}>_{g,0}."""
    if g < 2:
        raise ValueError("g >= 2")
    return boundary_class_correlator(g, (), cls) * (Fraction(2) ** dgn(g, 0) / cls.p ** (2 * g - 2))


def psi_oracle_airy(g: int, ds: Sequence[int]) -> Fraction:
    """<prod tau> read off the Airy-curve recursion: C = 2^{d_{g,n}} 2^{-(2g-2+n)} <prod tau>."""
    from .curves import airy
    from .toprec import TopologicalRecursion

    n = len(ds)
    if not is_stable(g, n) or sum(ds) != dgn(g, n) or any(d < 0 for d in ds):
        return Fraction(0)
    K, M = 2 * dgn(g, n) + 3, 2 * (3 * g - 2 + n)
    C = TopologicalRecursion(airy(K, M)).tensor(g, n)[tuple(ds)]
    return Fraction(C) * Fraction(2) ** (2 * g - 2 + n) / Fraction(2) ** dgn(g, n)


def wp_class() -> ClassData:
    from .algebra import RatFunc

    return ClassData(1, {1: 2 * RatFunc.q()}, provenance="wp(pi^2)")


__all__ = [
    "psi_correlator", "psi_oracle_airy", "kappa_psi_correlator", "kappa_class_correlator",
    "boundary_class_correlator", "hodge_class_correlator", "mainformula_tensor",
    "mainformula_free_energy", "unweighted_correlator", "degree_tuples",
]
