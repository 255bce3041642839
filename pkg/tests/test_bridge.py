from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from spectral_intersect.algebra import QuadExt, RatFunc
from spectral_intersect.bridge import (bhat_from_B, curve_class, dual_times, elsv_hurwitz, format_wp_polynomial,
                                       lambert_class, lambert_times, mv_coefficient, mv_residue_oracle,
                                       vertex_class, vertex_times, wp_volume)
from spectral_intersect.classdata import GenfunError, bhat_genfun, weight_from_bhat
from spectral_intersect.curves import airy, deformed_airy, lambert, vertex, weil_petersson
from spectral_intersect.intersect import (kappa_psi_correlator, mainformula_free_energy, mainformula_tensor,
                                          psi_correlator)
from spectral_intersect.toprec import TopologicalRecursion

fractions = st.fractions(min_value=-10, max_value=10, max_denominator=12)


# ------------------------------------------------------------ dual times

def test_airy_dual_times():
    p, tt = dual_times(airy(9, 8), 3)
    assert p == 2 and all(v == 0 for v in tt.values())


def test_first_dual_time():
    t3, t5 = Fraction(5, 3), Fraction(-7, 4)
    p, tt = dual_times(deformed_airy({3: t3, 5: t5, 7: 1}, K_max=7), 2)
    assert p == 2 * t3
    assert tt[1] == -3 * t5 / (2 * t3)


def test_dual_times_need_orders():
    with pytest.raises(ValueError):
        dual_times(airy(5, 4), 3)


def test_bhat_from_B():
    B = {(0, 0): Fraction(3), (2, 0): Fraction(5), (0, 2): Fraction(5), (1, 0): Fraction(9), (0, 1): Fraction(9),
         (2, 2): Fraction(7), (4, 2): Fraction(1), (2, 4): Fraction(1)}
    bh = bhat_from_B(deformed_airy({3: 1}, B, K_max=3, M_max=4))
    assert bh[(0, 0)] == Fraction(3, 2)
    assert bh[(1, 0)] == bh[(0, 1)] == Fraction(5, 4)
    assert bh[(1, 1)] == Fraction(7, 8)
    assert bh[(2, 1)] == Fraction(3, 16)
    assert set(bh) == {(0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (1, 2)}  # odd rows never appear
    assert bhat_from_B(airy(3, 4)) == {}


# ------------------------------------------------------- B-hat genfun

@given(st.lists(fractions, min_size=3, max_size=3))
@settings(max_examples=30, deadline=None)
def test_genfun_symmetric(odd):
    tt = {1: odd[0], 3: odd[1], 5: odd[2]}
    bh = bhat_genfun(tt, 5)
    assert all(bh.get((l, k)) == v for (k, l), v in bh.items())
    assert all(k + l <= 5 for k, l in bh)


def test_genfun_zero_and_even_rejection():
    assert bhat_genfun({}, 4) == {}
    with pytest.raises(GenfunError):
        bhat_genfun({1: Fraction(1), 2: Fraction(1, 3)}, 4)


def test_genfun_low_terms():
    t1, t3 = Fraction(2, 5), Fraction(-1, 7)
    bh = bhat_genfun({1: t1, 3: t3}, 2)
    # (1 - F(U)F(V))/(U+V) with F = exp(-t1 U - t3 U^3)
    assert bh[(0, 0)] == t1
    assert bh[(1, 0)] == -t1 ** 2 / 2
    assert bh[(2, 0)] == t1 ** 3 / 6 + t3
    assert bh[(1, 1)] == t1 ** 3 / 3 - t3


# ------------------------------------------------------------ Lambert

def _low(bh, K):
    return {k: v for k, v in bh.items() if sum(k) <= K}


def test_lambert_curve_gives_bernoulli_times():
    c = lambert(11, 10)
    p, tt = dual_times(c, 4)
    assert p == 2 * QuadExt(0, 1, -2)
    assert p * p == -8
    assert {k: v for k, v in tt.items() if v} == lambert_times(4)
    assert lambert_times(5) == {1: Fraction(1, 12), 3: Fraction(-1, 360), 5: Fraction(1, 1260)}
    assert _low(bhat_from_B(c), 5) == bhat_genfun(lambert_times(6), 5)


def test_lambert_class_fields():
    lc = lambert_class(5)
    assert lc.p_squared == -8
    assert "sign=+" in lc.provenance
    assert all(k % 2 for k in lc.cls.tt)


def test_vertex_limit_is_mirrored_lambert():
    # (f+1)^{1-2k} - f^{1-2k} -> 0: the vertex times tend to -B_2k/(2k(2k-1))
    big = vertex_times(Fraction(10) ** 12, 5)
    for k, v in lambert_times(5).items():
        assert abs(float(big[k] + v)) < 1e-10


# ------------------------------------------------------------- vertex

def test_vertex_curve_gives_closed_form():
    c = vertex(1, 15, 14)
    p, tt = dual_times(c, 6)
    assert p * p == Fraction(8, 1 * 2)
    assert {k: v for k, v in tt.items() if v} == vertex_times(1, 6)
    assert vertex_times(1, 5) == {1: Fraction(-1, 8), 3: Fraction(1, 192), 5: Fraction(-1, 640)}
    assert _low(bhat_from_B(c), 6) == bhat_genfun(vertex_times(1, 7), 6)


def test_vertex_framing_symmetries():
    q = RatFunc.q()
    base = vertex_times(q, 9)
    assert vertex_times(-q - 1, 9) == base
    inv = vertex_times(1 / q, 9)
    for k, v in base.items():
        assert inv[k] == q ** k * v
    b, bi = vertex_class(q, 5).cls.bhat, vertex_class(1 / q, 5).cls.bhat
    assert set(b) == set(bi)
    for (k, l), v in b.items():
        assert k + l <= 4
        assert bi[(k, l)] == q ** (k + l + 1) * v


def test_vertex_leg_weight_from_bhat():
    vc = vertex_class("q", 5)
    assert vc.cls.leg_weight == weight_from_bhat(vc.cls.bhat, 5, vc.cls.leg_weight[0])
    assert vc.p_squared == 8 / (RatFunc.q() * (RatFunc.q() + 1))
    with pytest.raises(ValueError):
        vertex_class(-1, 3)


def test_mv_coefficient():
    assert mv_coefficient(1, 1) == 2
    assert mv_coefficient(2, 2) == 15
    assert mv_coefficient(2, 2, 1) == -30
    for f in (1, 2, 3):
        for mu in (1, 2, 3, 4):
            assert mv_residue_oracle(f, mu) == -mv_coefficient(f, mu)
    with pytest.raises(ValueError):
        mv_coefficient(0, 1)


# ------------------------------------------------------------ Hurwitz

def test_elsv_small():
    assert elsv_hurwitz(0, [1]) == 1
    assert elsv_hurwitz(0, [2]) == Fraction(1, 2)
    assert elsv_hurwitz(0, [1, 1]) == Fraction(1, 2)
    assert elsv_hurwitz(1, [1]) == 0
    assert elsv_hurwitz(0, [3, 1]) == 27
    with pytest.raises(ValueError):
        elsv_hurwitz(0, [0])


# ---------------------------------------------------------- WP volumes

def _poly(g, n):
    return {m[:-1]: m[-1] for m in wp_volume(g, n)}


def test_wp_small_volumes():
    assert _poly(0, 3) == {(0, 0, 0, 0): 1}
    assert _poly(1, 1) == {(0, 1): Fraction(1, 48), (1, 0): Fraction(1, 12)}
    v04 = _poly(0, 4)
    assert v04[(1, 0, 0, 0, 0)] == 2
    assert all(v04[tuple(1 if j == i else 0 for j in range(5))] == Fraction(1, 2) for i in range(1, 5))
    assert len(v04) == 5
    assert format_wp_polynomial(wp_volume(1, 1)) == "1/12*pi^2 + 1/48*L1^2"
    assert _poly(2, 0) == {(3,): Fraction(43, 2160)}


@pytest.mark.parametrize("g, n", [(1, 2), (0, 5), (1, 3), (2, 1)])
def test_wp_symmetric_with_psi_top_block(g, n):
    V = _poly(g, n)
    D = 3 * g - 3 + n
    for key, v in V.items():
        assert sum(key) == D
        rev = (key[0],) + tuple(reversed(key[1:]))
        assert V.get(rev) == v
        if key[0] == 0:
            expected = psi_correlator(g, key[1:])
            for d in key[1:]:
                expected /= 2 ** d * factorial(d)
            assert v == expected
    assert V[(D,) + (0,) * n] == Fraction(2 ** D, factorial(D)) * kappa_psi_correlator(g, [0] * n, [1] * D)


def test_wp_curve_reproduces_volumes():
    q = RatFunc.q()
    tr = TopologicalRecursion(weil_petersson(11, 10))
    for g, n in ((0, 3), (0, 4), (1, 1), (1, 2), (2, 1)):
        T, V = tr.tensor(g, n), wp_volume(g, n)
        keys = set(T.data) | {tuple(m[1:-1]) for m in V}
        for d in keys:
            c = sum((m[-1] * q ** m[0] for m in V if tuple(m[1:-1]) == d), RatFunc.const(0))
            factor = Fraction(2) ** (2 - 2 * g - n)
            for x in d:
                factor *= 4 ** x * factorial(x)
            assert T[d] == c * factor
    assert tr.free_energy(2) == Fraction(1, 4) * Fraction(43, 2160) * q ** 3


# ------------------------------------------------------- main formula

def test_main_formula_on_deformed_curve():
    c = deformed_airy({3: Fraction(-2, 3), 5: Fraction(1, 2), 7: Fraction(3)},
                      {(0, 0): Fraction(1, 5), (2, 0): Fraction(-2), (0, 2): Fraction(-2)}, K_max=11, M_max=10)
    tr = TopologicalRecursion(c)
    for g, n in ((0, 3), (1, 1), (0, 4), (1, 2), (2, 1)):
        assert tr.tensor(g, n) == mainformula_tensor(g, n, curve_class(c, 3 * g - 3 + n))
    assert tr.free_energy(2) == mainformula_free_energy(2, curve_class(c, 3))
