import random
from fractions import Fraction
from itertools import combinations
from math import factorial

import pytest

from spectral_intersect.algebra import RatFunc
from spectral_intersect.bridge import curve_class
from spectral_intersect.classdata import ClassData, weight_from_times
from spectral_intersect.curves import deformed_airy
from spectral_intersect.intersect import (boundary_class_correlator, degree_tuples, hodge_class_correlator,
                                          kappa_class_correlator, kappa_psi_correlator, mainformula_tensor,
                                          psi_correlator, psi_oracle_airy)
from spectral_intersect.toprec import dgn, is_stable

SMALL = [(0, 3), (0, 4), (0, 5), (1, 1), (1, 2), (1, 3), (2, 0), (2, 1)]


def test_psi_examples():
    assert psi_correlator(0, [0, 0, 0]) == 1
    assert psi_correlator(1, [1]) == Fraction(1, 24)
    assert psi_correlator(2, [4]) == Fraction(1, 1152)
    assert psi_correlator(2, [2, 0]) == 0
    assert psi_correlator(0, [1, 1, 0, 0, 0]) == 2


def test_psi_order_irrelevant():
    assert psi_correlator(1, [2, 1, 0]) == psi_correlator(1, [0, 1, 2]) == Fraction(1, 12)


def test_string_and_top_relations():
    for n in range(3, 9):
        assert psi_correlator(0, [1] * (n - 3) + [0, 0, 0]) == factorial(n - 3)
    for g in range(1, 5):
        assert psi_correlator(g, [3 * g - 2]) == Fraction(1, 24 ** g * factorial(g))


def test_oracle_examples():
    assert psi_oracle_airy(0, [1, 0, 0, 0]) == 1
    assert psi_oracle_airy(1, [2, 0]) == Fraction(1, 24)
    assert psi_oracle_airy(2, [2, 2, 0]) == psi_correlator(2, [2, 2, 0])


def test_kappa_examples():
    assert kappa_psi_correlator(1, [0], [1]) == Fraction(1, 24)
    assert kappa_psi_correlator(1, [], [1]) == 0  # M_{1,0} is not stable
    assert kappa_psi_correlator(1, [2, 0, 0], [1]) == Fraction(1, 6)
    assert kappa_psi_correlator(1, [0, 0], [1, 1]) == Fraction(1, 6) - Fraction(1, 24)
    assert kappa_psi_correlator(2, [], [1, 1, 1]) == Fraction(43, 2880)
    with pytest.raises(ValueError):
        kappa_psi_correlator(1, [0], [0])


def test_kappa_top_class():
    for g in (2, 3):
        assert kappa_psi_correlator(g, [], [3 * g - 3]) == psi_correlator(g, [3 * g - 2])


def test_kappa_exponential():
    t1 = RatFunc.q()
    assert kappa_class_correlator(1, [0], {1: t1}) == t1 / 24
    assert kappa_class_correlator(1, [1], {1: t1}) == Fraction(1, 24)
    a, b, c = Fraction(2, 3), Fraction(-5, 7), Fraction(1, 11)
    expected = c / 1152 + b * a / 240 + 43 * a ** 3 / 17280
    assert kappa_class_correlator(2, [], {1: a, 2: b, 3: c}) == expected


def test_boundary_examples():
    t1, b00 = Fraction(3, 5), Fraction(-7, 2)
    cls = ClassData(1, {1: t1}, {(0, 0): b00})
    assert boundary_class_correlator(1, [0], cls) == t1 / 24 + b00 / 2
    assert boundary_class_correlator(0, [0, 0, 0], cls) == 1
    plain = ClassData(1, {1: t1, 2: Fraction(1, 3)})
    for ds in degree_tuples(3, 3):
        assert boundary_class_correlator(1, ds, plain) == kappa_class_correlator(1, ds, plain.tt)


def test_truncated_class_refuses_larger_degree():
    c = deformed_airy({3: 1, 5: Fraction(1, 2)}, {(0, 0): Fraction(1, 3)}, K_max=11, M_max=10)
    cls = curve_class(c, 3)
    boundary_class_correlator(2, [], cls)
    with pytest.raises(ValueError):
        boundary_class_correlator(2, [0], cls)
    with pytest.raises(ValueError):
        mainformula_tensor(2, 1, cls)


# ------------------------------------------------------ two identities on kappa

def _random_times(rng, top):
    return {k: Fraction(rng.randint(-9, 9), rng.randint(1, 7)) for k in range(1, top + 1)}


def kappa_identity_failures(g, n, seed):
    """<kappa_d ...> moves to an extra leg with weight exp(-sum t~ psi), and back."""
    rng = random.Random(seed)
    D = dgn(g, n)
    bad = []
    for _ in range(2):
        tt = _random_times(rng, D + 1)
        weight = weight_from_times(tt, D + 1)
        inverse = weight_from_times({k: -v for k, v in tt.items()}, D + 1)
        cls = ClassData(1, tt)
        for ds in degree_tuples(n, D):
            for d in range(1, D - sum(ds) + 1):
                lhs = kappa_class_correlator(g, ds, tt, extra=(d,))
                rhs = boundary_class_correlator(g, tuple(ds) + (d + 1,), cls,
                                                leg_weights=[[1]] * n + [weight])
                if lhs != rhs:
                    bad.append(("first", g, ds, d))
            for d in range(0, D - sum(ds) + 1):
                lhs = kappa_class_correlator(g, tuple(ds) + (d + 1,), tt)
                rhs = sum(inverse[s] * kappa_class_correlator(g, ds, tt, extra=(d + s,))
                          for s in range(0, D - sum(ds) - d + 1) if d + s >= 1)
                if d == 0:
                    # kappa_0 = 2g - 2 + n on the (g, n) space
                    rhs += (2 * g - 2 + n) * kappa_class_correlator(g, ds, tt)
                if lhs != rhs:
                    bad.append(("second", g, ds, d))
    return bad


@pytest.mark.parametrize("g, n", SMALL)
def test_kappa_leg_identities(g, n):
    assert not kappa_identity_failures(g, n, 1000 * g + n)


# -------------------------------------------------- derivative in one B-hat entry

def derivative_bracket(cls, g, ds, k, l):
    """T^(g-1)(k, l, d) + stable splits, every slot weight 1."""
    total = 0
    if g >= 1:
        total = total + boundary_class_correlator(g - 1, (k, l) + tuple(ds), cls)
    n = len(ds)
    for size in range(n + 1):
        for I in combinations(range(n), size):
            left = (k,) + tuple(ds[i] for i in I)
            right = (l,) + tuple(ds[i] for i in range(n) if i not in I)
            for h in range(g + 1):
                if is_stable(h, len(left)) and is_stable(g - h, len(right)):
                    total = total + (boundary_class_correlator(h, left, cls)
                                     * boundary_class_correlator(g - h, right, cls))
    return total


def d_dq(x):
    return x.derivative() if isinstance(x, RatFunc) else RatFunc.const(0)


def formal_class(rng, k, l, top):
    q = RatFunc.q()
    tt = {j: RatFunc.const(v) for j, v in _random_times(rng, top).items()}
    bhat = {}
    for a in range(top):
        for b in range(a, top - a):
            v = q if (a, b) == (min(k, l), max(k, l)) else RatFunc.const(Fraction(rng.randint(-5, 5), 3))
            bhat[(a, b)] = bhat[(b, a)] = v
    return ClassData(1, tt, bhat)


def derivative_failures(k, l, seed, targets=SMALL):
    """d/dq T with B^_{kl} = B^_{lk} = q against the pinched and split brackets."""
    cls = formal_class(random.Random(seed), k, l, 4)
    bad = []
    for g, n in targets:
        for ds in degree_tuples(n, dgn(g, n)):
            if list(ds) != sorted(ds):
                continue
            lhs = d_dq(boundary_class_correlator(g, ds, cls))
            rhs = derivative_bracket(cls, g, ds, k, l)
            if k == l:
                rhs = rhs * Fraction(1, 2)
            if lhs != rhs:
                bad.append((g, ds))
    return bad


@pytest.mark.parametrize("k, l", [(0, 0), (1, 0), (1, 1), (2, 0)])
def test_bhat_derivative(k, l):
    assert not derivative_failures(k, l, 7 * k + l)


# ------------------------------------------------------------------ Hodge

def test_hodge_lambda1_on_M11():
    # Lambda(alpha) = 1 - lambda_1/alpha on M_{1,1}; <lambda_1> = 1/24
    assert hodge_class_correlator(1, [0], [Fraction(1)]) == Fraction(-1, 24)
    assert hodge_class_correlator(1, [1], [Fraction(3)]) == Fraction(1, 24)


def test_hodge_lambda_g():
    q = RatFunc.q()
    zero = RatFunc.const(0)
    known = {1: Fraction(1, 24), 2: Fraction(7, 5760), 3: Fraction(31, 967680)}
    for g, val in known.items():
        assert hodge_class_correlator(g, [2 * g - 2], [q], zero) == (-1) ** g * val * q ** -g


def test_hodge_cubed_genus_two():
    q = RatFunc.q()
    # q^-3 part of Lambda(q)^3 on M_2: -(<lambda_1^3> + 6 <lambda_1 lambda_2>) = -(1/2880 + 6/5760)
    v = hodge_class_correlator(2, [], [q, q, q], RatFunc.const(0))
    assert v == -Fraction(1, 720) * q ** -3


def test_hodge_large_alpha_is_psi():
    # scaling: degree-m Hodge part carries alpha^-m, so alpha -> infinity leaves <prod tau>
    big = Fraction(10) ** 30
    v = hodge_class_correlator(1, [1, 1, 1], [big])
    assert abs(float(v - psi_correlator(1, [1, 1, 1]))) < 1e-20
