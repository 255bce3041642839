"""Exact scalars in three ring modes.

Mode "rational" uses :class:`fractions.Fraction` directly.  Mode "ratfun" is
:class:`RatFunc`, rational functions in one indeterminate ``q``.  Mode
"quadratic" is :class:`QuadExt`, elements ``a + b*s`` with ``s**2 = r``.

All three interoperate with ``int`` and ``Fraction`` so that generic code can
be written once and run over any mode.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Union

Poly = tuple  # tuple[Fraction, ...], low degree first, no trailing zeros

_ZERO = Fraction(0)
_ONE = Fraction(1)


# ---------------------------------------------------------------- polynomials

def _ptrim(c) -> Poly:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _padd(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return _ptrim(out)


def _pneg(a: Poly) -> Poly:
    return tuple(-x for x in a)


def _pmul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _ptrim(out)


def _pscale(a: Poly, c) -> Poly:
    if c == 0:
        return ()
    return tuple(x * c for x in a)


def _pdivmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    db = len(b) - 1
    lead = b[-1]
    if len(rem) <= db:
        return (), _ptrim(rem)
    quo = [_ZERO] * (len(rem) - db)
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i]
        if c:
            c = c / lead
            quo[i - db] = c
            for j, y in enumerate(b):
                rem[i - db + j] -= c * y
    return _ptrim(quo), _ptrim(rem[:db])


def _pmonic(a: Poly) -> Poly:
    if not a:
        return a
    lead = a[-1]
    if lead == 1:
        return a
    return tuple(x / lead for x in a)


def _pgcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, _pdivmod(a, b)[1]
    return _pmonic(a)


def _pderiv(a: Poly) -> Poly:
    return _ptrim(i * a[i] for i in range(1, len(a)))


def _peval(a: Poly, x):
    out = 0
    for c in reversed(a):
        out = out * x + c
    return out


def _pformat(a: Poly, var: str = "q") -> str:
    if not a:
        return "0"
    parts = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if i == 0:
            body = str(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        parts.append((sign, body))
    head_sign, head = parts[0]
    text = ("-" if head_sign == "-" else "") + head
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


_TERM = re.compile(r"^(?:(\d+(?:/\d+)?)\*?)?(?:([a-z])(?:\^(\d+))?)?$")


def _pparse(text: str, var: str = "q") -> Poly:
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    if s[0] not in "+-":
        s = "+" + s
    pieces = re.findall(r"[+-][^+-]+", s)
    if "".join(pieces) != s:
        raise ValueError(f"cannot parse polynomial {text!r}")
    out: dict[int, Fraction] = {}
    for piece in pieces:
        sign, body = piece[0], piece[1:]
        m = _TERM.match(body)
        if not m or (m.group(1) is None and m.group(2) is None):
            raise ValueError(f"bad term {piece!r} in {text!r}")
        coef = Fraction(m.group(1)) if m.group(1) else _ONE
        if m.group(2) is not None:
            if m.group(2) != var:
                raise ValueError(f"unknown indeterminate {m.group(2)!r}")
            deg = int(m.group(3)) if m.group(3) else 1
        else:
            deg = 0
        out[deg] = out.get(deg, _ZERO) + (coef if sign == "+" else -coef)
    top = max(out)
    return _ptrim(out.get(i, _ZERO) for i in range(top + 1))


# ------------------------------------------------------------- RatFunc (b)

class RatFunc:
    """Reduced rational function num/den in q; den monic, gcd(num, den) = 1."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=(), den=(_ONE,), *, _reduced: bool = False):
        if not _reduced:
            num = _ptrim(Fraction(x) for x in num)
            den = _ptrim(Fraction(x) for x in den)
            if not den:
                raise ZeroDivisionError("zero denominator")
            if not num:
                den = (_ONE,)
            else:
                g = _pgcd(num, den)
                if len(g) > 1:
                    num = _pdivmod(num, g)[0]
                    den = _pdivmod(den, g)[0]
                lead = den[-1]
                if lead != 1:
                    num = _pscale(num, 1 / lead)
                    den = _pscale(den, 1 / lead)
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def q(cls) -> "RatFunc":
        return cls((_ZERO, _ONE), _reduced=True)

    @classmethod
    def const(cls, c) -> "RatFunc":
        c = Fraction(c)
        return cls((c,) if c else (), _reduced=True)

    @staticmethod
    def _lift(x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, (int, Fraction)):
            return RatFunc.const(x)
        return NotImplemented

    def is_constant(self) -> bool:
        return len(self.num) <= 1 and len(self.den) == 1

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num[0] if self.num else _ZERO

    def __add__(self, other):
        o = RatFunc._lift(other)
        if o is NotImplemented:
            return o
        if not o.num:
            return self
        if not self.num:
            return o
        if self.den == o.den:
            if len(self.den) == 1:
                return RatFunc(_padd(self.num, o.num), self.den, _reduced=True)
            return RatFunc(_padd(self.num, o.num), self.den)
        num = _padd(_pmul(self.num, o.den), _pmul(o.num, self.den))
        return RatFunc(num, _pmul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(_pneg(self.num), self.den, _reduced=True)

    def __sub__(self, other):
        o = RatFunc._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = RatFunc._lift(other)
        if o is NotImplemented:
            return o
        if not self.num or not o.num:
            return RatFunc()
        if len(self.den) == 1 and len(o.den) == 1:
            return RatFunc(_pmul(self.num, o.num), (_ONE,), _reduced=True)
        g1 = _pgcd(self.num, o.den)
        g2 = _pgcd(o.num, self.den)
        n1, d2 = (_pdivmod(self.num, g1)[0], _pdivmod(o.den, g1)[0]) if len(g1) > 1 else (self.num, o.den)
        n2, d1 = (_pdivmod(o.num, g2)[0], _pdivmod(self.den, g2)[0]) if len(g2) > 1 else (o.num, self.den)
        num = _pmul(n1, n2)
        den = _pmul(d1, d2)
        lead = den[-1]
        if lead != 1:
            num, den = _pscale(num, 1 / lead), _pscale(den, 1 / lead)
        return RatFunc(num, den, _reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        lead = self.num[-1]
        return RatFunc(_pscale(self.den, 1 / lead), _pscale(self.num, 1 / lead), _reduced=True)

    def __truediv__(self, other):
        o = RatFunc._lift(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = RatFunc.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        o = RatFunc._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash((self.num, self.den))
        return self._hash

    def derivative(self) -> "RatFunc":
        """Formal d/dq."""
        num = _padd(_pmul(_pderiv(self.num), self.den), _pneg(_pmul(self.num, _pderiv(self.den))))
        return RatFunc(num, _pmul(self.den, self.den))

    def subs(self, value):
        """Evaluate at q = value (any scalar supporting field operations)."""
        d = _peval(self.den, value)
        if d == 0:
            raise ZeroDivisionError("pole at substituted value")
        return _peval(self.num, value) / d

    def __str__(self):
        if len(self.den) == 1:
            if len(self.num) <= 1:
                return str(self.num[0] if self.num else 0)
            return f"({_pformat(self.num)})"
        return f"({_pformat(self.num)})/({_pformat(self.den)})"

    def __repr__(self):
        return f"RatFunc({self})"

    @classmethod
    def parse(cls, text: str) -> "RatFunc":
        s = text.strip()
        m = re.fullmatch(r"\((.*)\)\s*/\s*\((.*)\)", s)
        if m:
            return cls(_pparse(m.group(1)), _pparse(m.group(2)))
        if s.startswith("(") and s.endswith(")"):
            s = s[1:-1]
        return cls(_pparse(s))


# ------------------------------------------------------------- QuadExt (c)

class QuadExt:
    """a + b*s with s**2 = r (r rational, fixed per element)."""

    __slots__ = ("a", "b", "r")

    def __init__(self, a, b, r):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.r = Fraction(r)

    def _lift(self, x):
        if isinstance(x, QuadExt):
            if x.r != self.r:
                raise ValueError(f"mixing s^2={self.r} with s^2={x.r}")
            return x
        if isinstance(x, (int, Fraction)):
            return QuadExt(x, 0, self.r)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return QuadExt(self.a + o.a, self.b + o.b, self.r)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.r)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return QuadExt(self.a - o.a, self.b - o.b, self.r)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return QuadExt(self.a * o.a + self.r * self.b * o.b,
                       self.a * o.b + self.b * o.a, self.r)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - self.r * self.b * self.b

    def inverse(self) -> "QuadExt":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError(f"{self} is not invertible")
        return QuadExt(self.a / n, -self.b / n, self.r)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = QuadExt(1, 0, self.r)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            return self.r == other.r and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.r))

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        b = self.b
        mag = "s" if abs(b) == 1 else f"{abs(b)}*s"
        if self.a == 0:
            return mag if b > 0 else f"-{mag}"
        return f"{self.a}{'+' if b > 0 else '-'}{mag}"

    def __repr__(self):
        return f"QuadExt({self}; s^2={self.r})"

    @classmethod
    def parse(cls, text: str, r) -> "QuadExt":
        s = text.replace(" ", "")
        try:
            if not s.endswith("s"):
                return cls(Fraction(s), 0, r)
            cut = max(s.rfind("+"), s.rfind("-"))
            a_txt, b_txt = (s[:cut], s[cut:-1]) if cut > 0 else ("0", s[:-1])
            b_txt = b_txt.rstrip("*")
            b = {"": _ONE, "+": _ONE, "-": -_ONE}.get(b_txt)
            return cls(Fraction(a_txt), Fraction(b_txt) if b is None else b, r)
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"cannot parse quadratic scalar {text!r}") from None


Scalar = Union[Fraction, RatFunc, QuadExt]


# --------------------------------------------------------------- ring modes

MODES = ("rational", "ratfun", "quadratic")


@dataclass(frozen=True)
class Ring:
    mode: str = "rational"
    r: Fraction | None = None

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown ring mode {self.mode!r}")
        if self.mode == "quadratic":
            if self.r is None:
                raise ValueError("quadratic mode needs r")
            r = Fraction(self.r)
            if r >= 0 and all(isqrt(v) ** 2 == v for v in (r.numerator, r.denominator)):
                raise ValueError(f"r = {r} is a rational square; the extension would not be a field")
            object.__setattr__(self, "r", r)
        elif self.r is not None:
            raise ValueError("r only applies to quadratic mode")

    def coerce(self, x):
        if self.mode == "rational":
            if isinstance(x, (int, Fraction)):
                return Fraction(x)
            if isinstance(x, RatFunc) and x.is_constant():
                return x.constant_value()
            if isinstance(x, QuadExt) and x.b == 0:
                return x.a
            raise TypeError(f"{x!r} is not rational")
        if self.mode == "ratfun":
            if isinstance(x, (int, Fraction, RatFunc)):
                return RatFunc._lift(x)
            raise TypeError(f"{x!r} is not a rational function")
        if isinstance(x, QuadExt):
            if x.r != self.r:
                raise TypeError("quadratic modulus mismatch")
            return x
        if isinstance(x, (int, Fraction)):
            return QuadExt(x, 0, self.r)
        raise TypeError(f"{x!r} does not live in Q(s), s^2={self.r}")

    def zero(self):
        return self.coerce(0)

    def one(self):
        return self.coerce(1)

    def parse(self, text: str):
        if self.mode == "rational":
            return Fraction(text.strip())
        if self.mode == "ratfun":
            return RatFunc.parse(text)
        return QuadExt.parse(text, self.r)

    @staticmethod
    def format(x) -> str:
        return str(x)

    def to_json(self) -> dict:
        out = {"mode": self.mode}
        if self.r is not None:
            out["r"] = str(self.r)
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "Ring":
        if not isinstance(obj, dict):
            raise ValueError("ring must be an object")
        extra = set(obj) - {"mode", "r"}
        if extra:
            raise ValueError(f"unknown ring fields {sorted(extra)}")
        r = obj.get("r")
        return cls(obj.get("mode", "rational"), Fraction(r) if r is not None else None)


def parse_scalar(text: str):
    """Parse a scalar string without a declared ring (rational or ratfun)."""
    s = text.strip()
    if "q" in s:
        return RatFunc.parse(s)
    return Fraction(s)


def format_scalar(x) -> str:
    return str(x)
