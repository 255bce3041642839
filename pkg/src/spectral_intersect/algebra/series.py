"""Truncated Laurent series with in-band truncation orders.

A series is known exactly for every exponent up to ``order`` (``None`` means
exact: all omitted coefficients are zero).  Every operation propagates the
order, and every read past it raises :class:`TruncationError`.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Iterable


class TruncationError(ArithmeticError):
    """A coefficient beyond the known truncation order was requested."""


class VariableMismatch(ValueError):
    pass


def _recip(c):
    return Fraction(1, c) if isinstance(c, int) else 1 / c


def _min_order(*orders):
    known = [o for o in orders if o is not None]
    return min(known) if known else None


class TruncatedSeries:
    """sum_{e >= val} c_e z^e, known for e <= order."""

    __slots__ = ("var", "val", "coeffs", "order")

    def __init__(self, coeffs: Iterable, val: int = 0, order: int | None = None,
                 var: str = "z"):
        coeffs = list(coeffs)
        # strip leading zeros
        lead = 0
        while lead < len(coeffs) and not coeffs[lead]:
            lead += 1
        coeffs = coeffs[lead:]
        val += lead
        if order is not None:
            keep = order - val + 1
            coeffs = coeffs[:max(keep, 0)]
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        if not coeffs:
            val = 0 if order is None else order + 1
        self.var = var
        self.val = val
        self.coeffs = coeffs
        self.order = order

    # ---------------------------------------------------------- constructors
    @classmethod
    def monomial(cls, c, e: int, order: int | None = None, var: str = "z"):
        return cls([c], e, order, var)

    @classmethod
    def from_dict(cls, terms: dict, order: int | None = None, var: str = "z"):
        terms = {e: c for e, c in terms.items() if c and (order is None or e <= order)}
        if not terms:
            return cls([], 0, order, var)
        lo, hi = min(terms), max(terms)
        return cls([terms.get(e, 0) for e in range(lo, hi + 1)], lo, order, var)

    @classmethod
    def zero(cls, order: int | None = None, var: str = "z"):
        return cls([], 0, order, var)

    # --------------------------------------------------------------- access
    def is_zero(self) -> bool:
        return not self.coeffs

    def valuation(self) -> float:
        """Exponent of the first nonzero coefficient (order+1 or inf if none known)."""
        if self.coeffs:
            return self.val
        return math.inf if self.order is None else self.order + 1

    def top(self) -> int | None:
        return self.val + len(self.coeffs) - 1 if self.coeffs else None

    def coefficient(self, e: int):
        if self.order is not None and e > self.order:
            raise TruncationError(f"coefficient z^{e} requested, series known to z^{self.order}")
        i = e - self.val
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    __getitem__ = coefficient

    def items(self):
        for i, c in enumerate(self.coeffs):
            if c:
                yield self.val + i, c

    def residue(self):
        if self.order is not None and self.order < -1:
            raise TruncationError("residue needs the series known through z^-1")
        return self.coefficient(-1)

    def truncate(self, order: int) -> "TruncatedSeries":
        new = order if self.order is None else min(order, self.order)
        return TruncatedSeries(self.coeffs, self.val, new, self.var)

    # ----------------------------------------------------------- arithmetic
    def _check(self, other: "TruncatedSeries"):
        if self.var != other.var:
            raise VariableMismatch(f"series in {self.var!r} vs {other.var!r}")

    def map(self, fn: Callable) -> "TruncatedSeries":
        return TruncatedSeries([fn(c) for c in self.coeffs], self.val, self.order, self.var)

    def scale(self, c) -> "TruncatedSeries":
        if not c:
            return TruncatedSeries([], 0, self.order, self.var)
        return TruncatedSeries([x * c for x in self.coeffs], self.val, self.order, self.var)

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by z^k."""
        order = None if self.order is None else self.order + k
        return TruncatedSeries(self.coeffs, self.val + k, order, self.var)

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries([other], 0, None, self.var)
        self._check(other)
        order = _min_order(self.order, other.order)
        terms: dict = {}
        for e, c in self.items():
            terms[e] = c
        for e, c in other.items():
            terms[e] = terms[e] + c if e in terms else c
        return TruncatedSeries.from_dict(terms, order, self.var)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries([other], 0, None, self.var)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def mul(self, other: "TruncatedSeries", cap: int | None = None) -> "TruncatedSeries":
        """Cauchy product; coefficients above ``cap`` are not computed."""
        if not isinstance(other, TruncatedSeries):
            out = self.scale(other)
            return out if cap is None else out.truncate(cap)
        self._check(other)
        va, vb = self.valuation(), other.valuation()
        cands = []
        if self.order is not None:
            cands.append(self.order + vb)
        if other.order is not None:
            cands.append(other.order + va)
        order = min(cands) if cands else None
        if order is not None and order == math.inf:
            order = None
        if order is not None and order == -math.inf:
            raise TruncationError("product of series with no known coefficients")
        if order is not None:
            order = int(order)
        if cap is not None:
            order = cap if order is None else min(order, cap)
        if not self.coeffs or not other.coeffs:
            return TruncatedSeries([], 0, order, self.var)
        lo = self.val + other.val
        hi = self.val + len(self.coeffs) + other.val + len(other.coeffs) - 2
        if order is not None:
            hi = min(hi, order)
        if hi < lo:
            return TruncatedSeries([], 0, order, self.var)
        out = [0] * (hi - lo + 1)
        a, b = self.coeffs, other.coeffs
        nb = len(b)
        for i, x in enumerate(a):
            if not x:
                continue
            lim = min(nb, hi - lo - i + 1)
            for j in range(lim):
                y = b[j]
                if y:
                    out[i + j] += x * y
        return TruncatedSeries(out, lo, order, self.var)

    def __mul__(self, other):
        return self.mul(other)

    def __rmul__(self, other):
        return self.scale(other)

    def inv(self) -> "TruncatedSeries":
        if not self.coeffs:
            raise ZeroDivisionError("inverse of a series with no nonzero known coefficient")
        c0 = self.coeffs[0]
        if not c0:
            raise ZeroDivisionError("zero leading coefficient")
        v = self.val
        if self.order is None and len(self.coeffs) == 1:
            return TruncatedSeries([_recip(c0)], -v, None, self.var)
        if self.order is None:
            raise TruncationError("inverse of a non-monomial exact series is infinite; truncate first")
        rel = self.order - v  # relative order of the unit part
        a = self.coeffs
        inv0 = _recip(c0)
        out = [inv0]
        for k in range(1, rel + 1):
            acc = 0
            for j in range(1, min(k, len(a) - 1) + 1):
                if a[j]:
                    acc += a[j] * out[k - j]
            out.append(-acc * inv0)
        return TruncatedSeries(out, -v, rel - v, self.var)

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return self.mul(other.inv())
        return self.scale(_recip(other))

    def derivative(self) -> "TruncatedSeries":
        order = None if self.order is None else self.order - 1
        return TruncatedSeries([(self.val + i) * c for i, c in enumerate(self.coeffs)],
                               self.val - 1, order, self.var)

    def reflect(self) -> "TruncatedSeries":
        """z -> -z."""
        return TruncatedSeries([-c if (self.val + i) % 2 else c for i, c in enumerate(self.coeffs)],
                               self.val, self.order, self.var)

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """self(inner(z)) for inner with positive valuation and self a power series."""
        if self.coeffs and self.val < 0:
            raise ValueError("outer series must be a power series")
        if inner.valuation() < 1:
            raise ValueError("inner series must have positive valuation")
        v = int(inner.valuation()) if inner.coeffs else 1
        cands = []
        if self.order is not None:
            cands.append((self.order + 1) * v - 1)
        if inner.order is not None:
            cands.append(inner.order)
        order = min(cands) if cands else None
        result = TruncatedSeries([], 0, order, self.var)
        power = TruncatedSeries([1], 0, order, self.var)
        top = self.top() or 0
        for k in range(0, top + 1):
            c = self.coefficient(k)
            if c:
                result = result + power.scale(c)
            if k < top:
                power = power.mul(inner, cap=order)
        return result.truncate(order) if order is not None else result

    # ------------------------------------------------- elementary functions
    def _require_positive_valuation(self, what: str):
        if self.coeffs and self.val < 1:
            raise ValueError(f"{what} needs zero constant term and no poles")

    def log1p(self) -> "TruncatedSeries":
        """log(1 + a) for a with zero constant term."""
        self._require_positive_valuation("log1p")
        if self.order is None and self.coeffs:
            raise TruncationError("log1p of an exact series is infinite; truncate first")
        order = self.order
        if not self.coeffs:
            return TruncatedSeries([], 0, order, self.var)
        # (log(1+a))' = a' / (1+a)
        one_plus = (self + 1)
        d = self.derivative().mul(one_plus.inv())
        return d.integral()

    def integral(self) -> "TruncatedSeries":
        """Formal antiderivative with zero constant term; rejects z^-1 terms."""
        if self.coefficient(-1) if (self.order is None or self.order >= -1) else 0:
            raise ValueError("z^-1 term has no Laurent antiderivative")
        out = {}
        for e, c in self.items():
            out[e + 1] = c * Fraction(1, e + 1)
        order = None if self.order is None else self.order + 1
        return TruncatedSeries.from_dict(out, order, self.var)

    def exp(self) -> "TruncatedSeries":
        """exp(a) for a with zero constant term."""
        self._require_positive_valuation("exp")
        if self.order is None and self.coeffs:
            raise TruncationError("exp of an exact series is infinite; truncate first")
        order = self.order
        if order is None:
            return TruncatedSeries([1], 0, None, self.var)
        # e' = a' e, solved coefficientwise
        a = [self.coefficient(k) for k in range(order + 1)]
        e = [1] + [0] * order
        for n in range(1, order + 1):
            acc = 0
            for k in range(1, n + 1):
                if a[k]:
                    acc += k * a[k] * e[n - k]
            e[n] = acc * Fraction(1, n)
        return TruncatedSeries(e, 0, order, self.var)

    # ------------------------------------------------------------- display
    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.var == other.var and self.order == other.order
                and dict(self.items()) == dict(other.items()))

    def agrees_with(self, other: "TruncatedSeries") -> bool:
        """Equality on the common known range."""
        order = _min_order(self.order, other.order)
        a = self if order is None else self.truncate(order)
        b = other if order is None else other.truncate(order)
        return dict(a.items()) == dict(b.items())

    def __repr__(self):
        terms = " + ".join(f"({c})*{self.var}^{e}" for e, c in self.items()) or "0"
        tail = "" if self.order is None else f" + O({self.var}^{self.order + 1})"
        return f"TruncatedSeries({terms}{tail})"
