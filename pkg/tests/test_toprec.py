from fractions import Fraction

import pytest

from spectral_intersect.algebra import RatFunc, Ring, TruncatedSeries, TruncationError
from spectral_intersect.curves import airy, deformed_airy, quadrangulation
from spectral_intersect.toprec import (CorrelatorTensor, TopologicalRecursion, compute_Fg, dgn,
                                       kernel_numerator, recursion_step, xi_expansion)

T3, T5, T7, T9 = Fraction(3, 2), Fraction(-2, 5), Fraction(5, 7), Fraction(1, 3)
B00 = Fraction(2, 9)


def generic(K=11, M=10, extra=None):
    B = {(0, 0): B00, (2, 0): Fraction(1, 4), (0, 2): Fraction(1, 4), (1, 1): Fraction(-3),
         (2, 1): Fraction(5), (1, 2): Fraction(5), (2, 2): Fraction(7, 3)}
    B.update(extra or {})
    return deformed_airy({3: T3, 5: T5, 7: T7, 9: T9}, B, K_max=K, M_max=M)


# ----------------------------------------------------------- basis forms

def test_xi_airy():
    c = airy(5, 4)
    assert xi_expansion(c, 0) == TruncatedSeries.from_dict({-2: -1}, 4)
    assert xi_expansion(c, 1).coefficient(-4) == Fraction(-3, 2)
    with pytest.raises(TruncationError):
        xi_expansion(c, 0, N=5)
    with pytest.raises(ValueError):
        xi_expansion(c, 0, "even")


def test_xi_tail_uses_bergman_row():
    c = generic()
    x = xi_expansion(c, 1)
    assert x.coefficient(1) == -Fraction(1, 2) * c.bergman(2, 1)
    xe = xi_expansion(c, 1, "even")
    assert xe.coefficient(-3) == -2 and xe.coefficient(2) == -c.bergman(1, 2)


def test_residue_pairing():
    c = generic()
    for d in range(4):
        xi = xi_expansion(c, d)
        for k in range(4):
            z = TruncatedSeries.monomial(Fraction(1), 2 * k + 1)
            expected = -Fraction(1, 2 ** d) * [1, 3, 15, 105][d] if k == d else 0
            assert z.mul(xi).residue() == expected


def test_kernel_numerator():
    assert kernel_numerator(airy(3, 2), 1) == [(1, 0, -2)]
    triples = kernel_numerator(airy(7, 6), 5)
    assert triples[1] == (3, 1, Fraction(-4, 3))
    assert triples[2] == (5, 2, Fraction(-2, 5) * Fraction(4, 3))
    with pytest.raises(TruncationError):
        kernel_numerator(airy(3, 2), 7)


# ------------------------------------------------------- explicit tensors

def test_W30():
    T = recursion_step(generic(), 0, 3)
    assert T.data == {(0, 0, 0): 1 / (2 * T3)}


def test_W11():
    T = recursion_step(generic(), 1, 1)
    assert T[(1,)] == 1 / (24 * T3)
    assert T[(0,)] == -3 * T5 / (48 * T3 ** 2) + B00 / (4 * T3)
    assert set(T.data) == {(0,), (1,)}


def test_W40_known_entries():
    T = recursion_step(generic(), 0, 4)
    assert T[(0, 0, 0, 0)] == -3 * T5 / (4 * T3 ** 3) + 3 * B00 / (4 * T3 ** 2)
    for key in ((1, 0, 0, 0), (0, 0, 1, 0)):
        assert T[key] == 1 / (2 * T3 ** 2)


@pytest.mark.parametrize("g, n", [(0, 3), (0, 4), (1, 1), (1, 2), (0, 5), (1, 3), (2, 1)])
def test_symmetry_and_degree_bound(g, n):
    T = TopologicalRecursion(generic()).tensor(g, n)
    assert T.is_symmetric()
    assert all(sum(k) <= dgn(g, n) and len(k) == n for k in T.data)
    # each leg has poles of order 2d + 2 <= 6g - 4 + 2n
    assert max(2 * max(k) + 2 for k in T.data) <= 6 * g - 4 + 2 * n


def test_truncation_order_independence():
    a = TopologicalRecursion(generic())
    b = TopologicalRecursion(generic(15, 14, {(6, 1): Fraction(11), (1, 6): Fraction(11)}))
    for g, n in ((0, 4), (1, 2), (0, 5), (1, 3), (2, 1)):
        assert a.tensor(g, n) == b.tensor(g, n)
    assert a.free_energy(2) == b.free_energy(2)


def test_even_times_do_not_matter():
    base = generic()
    moved = base.with_times({2: Fraction(5), 4: Fraction(-1, 3), 8: Fraction(2)})
    A, B = TopologicalRecursion(base), TopologicalRecursion(moved)
    for g, n in ((1, 2), (0, 5), (2, 1)):
        assert A.tensor(g, n) == B.tensor(g, n)
    assert A.free_energy(2) == B.free_energy(2)


def test_odd_B_rows_do_not_matter():
    base = TopologicalRecursion(generic()).tensor(1, 2)
    odd = generic(extra={(1, 0): Fraction(4), (0, 1): Fraction(4), (3, 1): Fraction(-1), (1, 3): Fraction(-1)})
    assert TopologicalRecursion(odd).tensor(1, 2) == base


def test_airy_free_energies_vanish():
    c = airy(17, 16)
    assert compute_Fg(c, 2) == 0
    assert compute_Fg(c, 3) == 0


def test_F2_without_bergman_deformation():
    c = deformed_airy({3: T3, 5: T5, 7: T7, 9: T9}, {}, K_max=11, M_max=10)
    a, b, d = (Fraction(3, 2) * T5 / T3, Fraction(15, 4) * T7 / T3, Fraction(105, 8) * T9 / T3)
    t1, t2, t3 = -a, -(b - a * a / 2), -(d - a * b + a ** 3 / 3)
    p = 2 * T3
    expected = 8 / p ** 2 * (t3 / (9 * 128) + t2 * t1 / (15 * 16) + 43 * t1 ** 3 / (5 * 27 * 128))
    assert compute_Fg(c, 2) == expected


def test_formal_ring_entries():
    q = RatFunc.q()
    c = deformed_airy({3: 1, 5: q}, {(0, 0): 1 / (1 + q)}, K_max=5, M_max=4, ring=Ring("ratfun"))
    T = recursion_step(c, 1, 1)
    assert T[(0,)] == -3 * q / 48 + 1 / (4 * (1 + q))


def test_rejections():
    c = airy(5, 4)
    tr = TopologicalRecursion(c)
    with pytest.raises(ValueError):
        tr.tensor(0, 2)
    with pytest.raises(ValueError):
        tr.free_energy(1)
    with pytest.raises(Exception):
        tr.tensor(2, 1)  # orders too small
    with pytest.raises(ValueError):
        TopologicalRecursion(quadrangulation(1, Fraction(1, 20)))


def test_tensor_json():
    T = recursion_step(generic(), 1, 1)
    body = T.to_json()
    assert body["normalization"] == "includes-2^dgn"
    assert [e["degrees"] for e in body["entries"]] == [[0], [1]]
    assert CorrelatorTensor(1, 1, dict(T.data)) == T
