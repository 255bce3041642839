"""Topological recursion at a single branchpoint, in exact truncated series.

Only the active integration variable is ever a series.  External legs stay
basis-indexed: a leg label ``d >= 0`` stands for d xi_d (odd family) and a
label ``-d`` (d >= 1) for the even family d xi~_d, which enters transiently
through B(z, z_i) and must cancel.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .algebra import TruncatedSeries, TruncationError, double_factorial
from .curves import LocalCurveData


class ConsistencyError(ArithmeticError):
    """An identity the recursion guarantees failed (e.g. an even-family term survived)."""


def dgn(g: int, n: int) -> int:
    return 3 * g - 3 + n


def is_stable(g: int, n: int) -> bool:
    return 2 * g - 2 + n > 0


@dataclass
class CorrelatorTensor:
    """C^(g)_n: W_n^(g) = sum_d C(d) prod d xi_{d_i}(z_i); C includes 2^{d_{g,n}}."""

    g: int
    n: int
    data: dict = field(default_factory=dict)  # full ordered tuple -> nonzero scalar

    def __getitem__(self, degrees) -> object:
        return self.data.get(tuple(degrees), 0)

    def sorted_items(self):
        for key in sorted(self.data):
            if list(key) == sorted(key):
                yield key, self.data[key]

    def is_symmetric(self) -> bool:
        for key, v in self.data.items():
            if self.data.get(tuple(sorted(key))) != v:
                return False
        return True

    def to_json(self) -> dict:
        return {
            "g": self.g,
            "n": self.n,
            "normalization": "includes-2^dgn",
            "entries": [{"degrees": list(k), "value": str(v)} for k, v in self.sorted_items()],
        }

    def __eq__(self, other):
        if not isinstance(other, CorrelatorTensor):
            return NotImplemented
        return (self.g, self.n) == (other.g, other.n) and self.data == other.data


# ----------------------------------------------------------- basis forms

def xi_expansion(curve: LocalCurveData, d: int, parity: str = "odd", N: int | None = None):
    """Coefficient function of d xi_d (odd) or d xi~_d (even) in zeta, known to z^N."""
    if N is None:
        N = curve.M_max
    if N > curve.M_max:
        raise TruncationError(f"order {N} exceeds M_max={curve.M_max}")
    if parity == "odd":
        row = 2 * d
        pole = Fraction(-double_factorial(2 * d + 1), 2 ** d)
        tail = Fraction(-double_factorial(2 * d - 1), 2 ** d)
        lead_exp = -2 * d - 2
    elif parity == "even":
        if d < 1:
            raise ValueError("even family starts at d = 1")
        row = 2 * d - 1
        pole = Fraction(-2 * d)
        tail = Fraction(-1)
        lead_exp = -2 * d - 1
    else:
        raise ValueError(f"parity must be 'odd' or 'even', not {parity!r}")
    terms = {lead_exp: curve.ring.coerce(pole)}
    for k in range(N + 1):
        c = curve.bergman(row, k)
        if c:
            terms[k] = c * tail
    return TruncatedSeries.from_dict(terms, N)


def kernel_numerator(curve: LocalCurveData, N: int):
    """Triples (power 2d+1, d, c) with  int_{-z}^{z} B(z0, .) = sum_d c z^{2d+1} d xi_d(z0), 2d+1 <= N.

    c = -2/(2d+1) * 2^d/(2d-1)!!.  Even-family terms integrate to zero over the
    symmetric interval and are absent.
    """
    if N > 2 * curve.M_max + 1:
        raise TruncationError(f"kernel to z^{N} needs M_max >= {(N - 1) // 2}")
    out = []
    for d in range((N - 1) // 2 + 1):
        coef = -Fraction(2, 2 * d + 1) * Fraction(2 ** d, double_factorial(2 * d - 1))
        out.append((2 * d + 1, d, coef))
    return out


def _bleg_coefficient(label: int, reflected: bool):
    """B(z, z_i)/dz (or B(zbar, z_i)/dz) on the basis leg ``label``: (coef, exponent)."""
    if label >= 0:
        c = Fraction(2 ** label, double_factorial(2 * label - 1))
        return (c if reflected else -c), 2 * label
    d = -label
    return Fraction(-1), 2 * d - 1


def _bleg_labels(max_exp: int):
    """All leg labels whose B-leg monomial has exponent <= max_exp."""
    labels = []
    d = 0
    while 2 * d <= max_exp:
        labels.append(d)
        d += 1
    d = 1
    while 2 * d - 1 <= max_exp:
        labels.append(-d)
        d += 1
    return labels


# ------------------------------------------------------------- recursion

_CACHE: dict = {}
_CACHE_LOCK = threading.Lock()


class TopologicalRecursion:
    """Memoized recursion for one curve."""

    def __init__(self, curve: LocalCurveData, strict_orders: bool = True):
        if getattr(curve, "multi_branchpoint", False):
            raise ValueError("curve has several branchpoints; only the one-branchpoint recursion exists")
        self.curve = curve
        self.strict = strict_orders
        self.fp = curve.fingerprint()
        self._xi: dict = {}
        self._expansions: dict = {}
        S = {}
        j = 0
        while 2 * j + 3 <= curve.K_max:
            S[2 * j] = curve.time(2 * j + 3)
            j += 1
        top = curve.K_max - 3
        # 1 / (2 (y(z) - y(-z)) dx/dz) = 1 / (8 z^2 S(z)); P = 1/(8 S)
        self.P = TruncatedSeries.from_dict(S, top).scale(8).inv()

    # -- basis series --
    def xi(self, d: int) -> TruncatedSeries:
        s = self._xi.get(d)
        if s is None:
            s = xi_expansion(self.curve, d, "odd", self.curve.M_max)
            self._xi[d] = s
        return s

    def tensor(self, g: int, n: int) -> CorrelatorTensor:
        if not is_stable(g, n):
            raise ValueError(f"(g,n)=({g},{n}) is unstable")
        key = (self.fp, g, n)
        hit = _CACHE.get(key)
        if hit is not None:
            return hit
        if self.strict:
            self.curve.check_orders(g, n)
        return self._get(g, n)

    def _store(self, g, n, tensor):
        with _CACHE_LOCK:
            _CACHE.setdefault((self.fp, g, n), tensor)

    def _get(self, g, n) -> CorrelatorTensor:
        t = _CACHE.get((self.fp, g, n))
        if t is None:
            t = self._compute(g, n)
            self._store(g, n, t)
        return t

    def expansion(self, g: int, m: int) -> dict:
        """rest-tuple -> sum_d C(d, rest) xi_d(z), first slot active."""
        key = (g, m)
        e = self._expansions.get(key)
        if e is not None:
            return e
        acc: dict = {}
        for degs, c in self._get(g, m).data.items():
            rest = degs[1:]
            term = self.xi(degs[0]).scale(c)
            acc[rest] = acc[rest] + term if rest in acc else term
        self._expansions[key] = acc
        return acc

    def _factor(self, g: int, m: int, reflected: bool, other_val: int | float):
        """Factor W_m^(g)(z or zbar, legs): list of (assignment, series)."""
        if (g, m) == (0, 2):
            max_exp = -other_val
            out = []
            for label in _bleg_labels(max_exp):
                c, e = _bleg_coefficient(label, reflected)
                out.append(((label,), TruncatedSeries.monomial(self.curve.ring.coerce(c), e)))
            return out
        exp = self.expansion(g, m)
        if reflected:
            return [(k, -s.reflect()) for k, s in exp.items()]
        return list(exp.items())

    @staticmethod
    def _min_val(g, m) -> int:
        if (g, m) == (0, 2):
            return 0
        return -2 * dgn(g, m) - 2

    def bracket(self, g: int, n: int) -> dict:
        """Coefficient of dz^2 in W(z, zbar, J) + sum W(z, I) W(zbar, J-I), per leg assignment."""
        legs = n - 1
        ring = self.curve.ring
        b: dict = {}

        def add(key, series):
            b[key] = b[key] + series if key in b else series

        # pinched term
        if g >= 1:
            if (g - 1, n + 1) == (0, 2):
                terms = {-2: ring.coerce(Fraction(-1, 4))}
                for k in range(self.curve.M_max + 1):
                    for l in range(self.curve.M_max + 1 - k):
                        c = self.curve.bergman(k, l)
                        if c:
                            e = k + l
                            terms[e] = terms.get(e, 0) - (c if l % 2 == 0 else -c)
                add((), TruncatedSeries.from_dict(terms, self.curve.M_max).truncate(0))
            else:
                grouped: dict = {}
                for degs, c in self._get(g - 1, n + 1).data.items():
                    key = (degs[2:], degs[1])
                    s = self.xi(degs[0]).scale(c)
                    grouped[key] = grouped[key] + s if key in grouped else s
                for (rest, d2), s in grouped.items():
                    # W(z, zbar) = sum X_d(z) X_d'(-z) dz dzbar, dzbar = -dz
                    add(rest, -s.mul(self.xi(d2).reflect(), cap=0))
        # split terms
        positions = range(legs)
        for h in range(g + 1):
            for size in range(legs + 1):
                m1, m2 = size + 1, legs - size + 1
                g2 = g - h
                if (h, m1) == (0, 1) or (g2, m2) == (0, 1):
                    continue
                for I in combinations(positions, size):
                    R = [p for p in positions if p not in I]
                    v1, v2 = self._min_val(h, m1), self._min_val(g2, m2)
                    f1 = self._factor(h, m1, False, v2)
                    f2 = self._factor(g2, m2, True, v1)
                    for a1, s1 in f1:
                        for a2, s2 in f2:
                            full = [0] * legs
                            for p, lab in zip(I, a1):
                                full[p] = lab
                            for p, lab in zip(R, a2):
                                full[p] = lab
                            prod = s1.mul(s2, cap=0)
                            if prod.is_zero() and prod.order is not None and prod.order >= 0:
                                continue
                            add(tuple(full), prod)
        return b

    def _compute(self, g: int, n: int) -> CorrelatorTensor:
        if (g, n) in ((0, 1), (0, 2)) or not is_stable(g, n):
            raise ValueError(f"(g,n)=({g},{n}) is not a stable tensor")
        D = dgn(g, n)
        kernel = {d: c for _, d, c in kernel_numerator(self.curve, 2 * D + 1)}
        out = CorrelatorTensor(g, n)
        for assign, series in self.bracket(g, n).items():
            Pb = self.P.mul(series, cap=0)
            if Pb.is_zero():
                if Pb.order is not None and Pb.order < 0:
                    raise TruncationError(f"bracket for ({g},{n}) known only to z^{Pb.order}")
                continue
            lowest = Pb.valuation()
            # Res z^{2d0+1} [z^{-2d0-2}](P b / z^2): the z^{-2 d0} coefficient of P b
            for d0 in range(0, int(-lowest) // 2 + 1):
                c = Pb.coefficient(-2 * d0)
                if not c:
                    continue
                if any(lab < 0 for lab in assign):
                    raise ConsistencyError(f"even-family coefficient survived at ({g},{n}) {assign}")
                if d0 + sum(assign) > D:
                    raise ConsistencyError(f"degree bound violated at ({g},{n}) {(d0,) + assign}")
                out.data[(d0,) + assign] = c * kernel[d0]
        if not out.is_symmetric():
            raise ConsistencyError(f"tensor ({g},{n}) is not symmetric")
        return out

    # -------------------------------------------------------- invariants
    def free_energy(self, g: int):
        """F_g = Res W_1^(g) Phi / (2 - 2g), Phi = sum_k t_{k+2} 2 z^{k+2}/(k+2)."""
        if g < 2:
            raise ValueError("F_g is defined here only for g >= 2")
        W = self.tensor(g, 1)
        K = self.curve.K_max
        phi = TruncatedSeries.from_dict(
            {k + 2: self.curve.time(k + 2) * Fraction(2, k + 2) for k in range(0, K - 1)}, K)
        total = self.curve.ring.zero()
        for (d,), c in W.data.items():
            # only the pole of xi_d pairs with Phi; the tail is regular
            pole = TruncatedSeries.monomial(self.curve.ring.coerce(
                Fraction(-double_factorial(2 * d + 1), 2 ** d)), -2 * d - 2)
            total = total + pole.mul(phi).residue() * c
        return total * Fraction(1, 2 - 2 * g)


def recursion_step(curve: LocalCurveData, g: int, n: int) -> CorrelatorTensor:
    return TopologicalRecursion(curve).tensor(g, n)


def compute_Fg(curve: LocalCurveData, g: int):
    return TopologicalRecursion(curve).free_energy(g)


def clear_cache() -> None:
    with _CACHE_LOCK:
        _CACHE.clear()
