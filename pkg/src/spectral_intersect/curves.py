"""Spectral curves as jet data at a single branchpoint, plus the preset curves."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, isqrt
from pathlib import Path
from typing import Mapping

from .algebra import QuadExt, RatFunc, Ring, TruncatedSeries


class CurveSpecError(ValueError):
    """Invalid curve data; ``path`` names the offending field."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


class OrderError(CurveSpecError):
    """Truncation orders too small for the requested target."""


def required_orders(g: int, n: int) -> tuple[int, int]:
    """(K_max, M_max) needed to compute the (g, n) correlator.

    For n = 0 the symplectic invariant is obtained from W_1^(g), so the
    (g, 1) bounds apply.
    """
    if n == 0:
        n = 1
    return 2 * (3 * g - 3 + n) + 3, 2 * (3 * g - 2 + n)


@dataclass(frozen=True)
class LocalCurveData:
    ring: Ring
    t: Mapping[int, object]
    B: Mapping[tuple[int, int], object]
    K_max: int
    M_max: int
    x_a: object = None
    name: str | None = None
    _fp: list = field(default_factory=list, compare=False, repr=False)

    def __post_init__(self):
        ring = self.ring
        t = {}
        for k, v in self.t.items():
            if not isinstance(k, int) or k < 2:
                raise CurveSpecError(f"t[{k}]", "index must be an integer >= 2")
            if k > self.K_max:
                raise CurveSpecError(f"t[{k}]", f"index exceeds K_max={self.K_max}")
            v = ring.coerce(v)
            if v:
                t[k] = v
        if self.K_max < 3 or not t.get(3):
            raise CurveSpecError("t[3]", "t_3 must be present and nonzero (regular branchpoint)")
        B = {}
        for (k, l), v in self.B.items():
            if min(k, l) < 0 or max(k, l) > self.M_max:
                raise CurveSpecError(f"B[{k},{l}]", f"index outside 0..M_max={self.M_max}")
            v = ring.coerce(v)
            if v:
                B[(k, l)] = v
        for (k, l), v in B.items():
            if B.get((l, k), 0) != v:
                raise CurveSpecError(f"B[{k},{l}]", f"asymmetric: B[{l},{k}] = {B.get((l, k), 0)}")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "B", B)
        if self.x_a is not None:
            object.__setattr__(self, "x_a", ring.coerce(self.x_a))

    # ------------------------------------------------------------- access
    def time(self, k: int):
        if k > self.K_max:
            raise OrderError(f"t[{k}]", f"beyond K_max={self.K_max}")
        return self.t.get(k, self.ring.zero())

    def bergman(self, k: int, l: int):
        if max(k, l) > self.M_max:
            raise OrderError(f"B[{k},{l}]", f"beyond M_max={self.M_max}")
        return self.B.get((k, l), self.ring.zero())

    def check_orders(self, g: int, n: int) -> None:
        K, M = required_orders(g, n)
        if self.K_max < K:
            raise OrderError("K_max", f"{self.K_max} < {K} required for (g,n)=({g},{n})")
        if self.M_max < M:
            raise OrderError("M_max", f"{self.M_max} < {M} required for (g,n)=({g},{n})")

    def with_times(self, updates: Mapping[int, object]) -> "LocalCurveData":
        t = dict(self.t)
        t.update(updates)
        return LocalCurveData(self.ring, t, self.B, self.K_max, self.M_max, self.x_a, self.name)

    # ------------------------------------------------------- serialization
    def to_json(self) -> dict:
        out = {
            "ring": self.ring.to_json(),
            "K_max": self.K_max,
            "M_max": self.M_max,
            "t": [[k, str(v)] for k, v in sorted(self.t.items())],
            "B": [[k, l, str(v)] for (k, l), v in sorted(self.B.items())],
        }
        if self.x_a is not None:
            out["x_a"] = str(self.x_a)
        if self.name is not None:
            out["name"] = self.name
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    def fingerprint(self) -> str:
        if not self._fp:
            body = self.to_json()
            body.pop("name", None)
            text = json.dumps(body, sort_keys=True, separators=(",", ":"))
            self._fp.append(hashlib.sha256(text.encode()).hexdigest()[:16])
        return self._fp[0]


_SPEC_FIELDS = {"ring", "t", "B", "x_a", "name", "K_max", "M_max"}


def curve_from_json(obj, targets: list[tuple[int, int]] = ()) -> LocalCurveData:
    if not isinstance(obj, dict):
        raise CurveSpecError("$", "curve spec must be an object")
    extra = set(obj) - _SPEC_FIELDS
    if extra:
        raise CurveSpecError(sorted(extra)[0], "unknown field")
    try:
        ring = Ring.from_json(obj.get("ring", {"mode": "rational"}))
    except (ValueError, TypeError) as exc:
        raise CurveSpecError("ring", str(exc)) from None

    def scalar(path, text):
        if not isinstance(text, str):
            raise CurveSpecError(path, "scalars must be strings")
        try:
            return ring.parse(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise CurveSpecError(path, f"cannot parse {text!r}: {exc}") from None

    t = {}
    for i, entry in enumerate(obj.get("t", [])):
        if not (isinstance(entry, list) and len(entry) == 2 and isinstance(entry[0], int)):
            raise CurveSpecError(f"t[{i}]", "expected [index, scalar]")
        if entry[0] in t:
            raise CurveSpecError(f"t[{i}]", f"duplicate index {entry[0]}")
        t[entry[0]] = scalar(f"t[{i}]", entry[1])
    B = {}
    for i, entry in enumerate(obj.get("B", [])):
        if not (isinstance(entry, list) and len(entry) == 3
                and isinstance(entry[0], int) and isinstance(entry[1], int)):
            raise CurveSpecError(f"B[{i}]", "expected [k, l, scalar]")
        key = (entry[0], entry[1])
        if key in B:
            raise CurveSpecError(f"B[{i}]", f"duplicate entry {key}")
        B[key] = scalar(f"B[{i}]", entry[2])
    K_max = obj.get("K_max", max(t, default=3))
    M_max = obj.get("M_max", max((max(k) for k in B), default=0))
    for name, val in (("K_max", K_max), ("M_max", M_max)):
        if not isinstance(val, int) or val < 0:
            raise CurveSpecError(name, "must be a nonnegative integer")
    x_a = scalar("x_a", obj["x_a"]) if obj.get("x_a") is not None else None
    name = obj.get("name")
    if name is not None and not isinstance(name, str):
        raise CurveSpecError("name", "must be a string")
    curve = LocalCurveData(ring, t, B, K_max, M_max, x_a, name)
    for g, n in targets:
        curve.check_orders(g, n)
    return curve


def load_curve_spec(path, targets: list[tuple[int, int]] = ()) -> LocalCurveData:
    text = Path(path).read_text(encoding="utf-8")
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CurveSpecError("$", f"parse error: {exc}") from None
    return curve_from_json(obj, targets)


# ---------------------------------------------------------------- presets

def airy(K_max: int = 15, M_max: int = 14) -> LocalCurveData:
    return LocalCurveData(Ring("rational"), {3: 1}, {}, K_max, M_max, Fraction(0), "airy")


def deformed_airy(times: Mapping[int, object], B: Mapping[tuple[int, int], object] = None,
                  K_max: int | None = None, M_max: int | None = None,
                  ring: Ring = Ring("rational"), name: str = "deformed-airy") -> LocalCurveData:
    B = dict(B or {})
    if K_max is None:
        K_max = max(times)
    if M_max is None:
        M_max = max((max(k) for k in B), default=0)
    return LocalCurveData(ring, dict(times), B, K_max, M_max, None, name)


def weil_petersson(K_max: int = 15, M_max: int = 14) -> LocalCurveData:
    """x = z^2, y = sin(2 pi z)/(2 pi); the formal q stands for pi^2."""
    q = RatFunc.q()
    t = {}
    for k in range((K_max - 3) // 2 + 1):
        t[2 * k + 3] = (-4 * q) ** k * Fraction(1, factorial(2 * k + 1))
    return LocalCurveData(Ring("ratfun"), t, {}, K_max, M_max, RatFunc.const(0), "weil-petersson")


def _squarefree_split(c: Fraction) -> tuple[Fraction, int]:
    """c = m^2 * r with r a squarefree integer; returns (m, r)."""
    num = c.numerator * c.denominator
    sign = -1 if num < 0 else 1
    num = abs(num)
    r, sq = 1, 1
    p = 2
    while p * p <= num:
        while num % (p * p) == 0:
            num //= p * p
            sq *= p
        if num % p == 0:
            num //= p
            r *= p
        p += 1
    r *= num
    m = Fraction(sq, c.denominator)
    return m, sign * r


def _bivariate_log_box(b, size: int):
    """log((w(z1) - w(z2)) / (b1 (z1 - z2))) on exponents < size in each variable.

    ``b`` lists the coefficients of w(z) = sum b_k z^k with b_0 = 0.
    """
    b1 = b[1]
    u = {}
    for i in range(size):
        for j in range(size):
            k = i + j + 1
            if (i or j) and k < len(b) and b[k]:
                u[(i, j)] = b[k] / b1
    log = {}
    power = {(0, 0): 1}
    for m in range(1, 2 * size):
        nxt = {}
        for (i1, j1), c1 in power.items():
            for (i2, j2), c2 in u.items():
                i, j = i1 + i2, j1 + j2
                if i < size and j < size:
                    nxt[(i, j)] = nxt.get((i, j), 0) + c1 * c2
        power = {k: v for k, v in nxt.items() if v}
        if not power:
            break
        coef = Fraction((-1) ** (m + 1), m)
        for key, v in power.items():
            log[key] = log.get(key, 0) + v * coef
    return log


def local_data_from_global(X, Y, K_max: int, M_max: int, *, name: str,
                           orient: object = None, x_a=None,
                           keep_t2: bool = True) -> LocalCurveData:
    """Jet data at a simple critical point of x, for B = dw dw'/(w - w')^2.

    ``X`` holds the rational Taylor coefficients of x(a + w) - x(a) (X[0] = X[1] = 0),
    ``Y`` those of y(a + w).  The local coordinate is zeta = sqrt(X), with the
    branch chosen so that t_3 equals ``orient`` when given.
    """
    c2 = Fraction(X[2])
    if c2 == 0:
        raise CurveSpecError("x", "branchpoint is not simple")
    m, r = _squarefree_split(c2)
    if r == 1:
        ring = Ring("rational")
        sigma = m
    else:
        ring = Ring("quadratic", Fraction(r))
        sigma = QuadExt(0, m, r)
    N = max(K_max, 2 * M_max + 4) + 1
    # zeta = sigma * w * h(w), h = sqrt(X / (c2 w^2))
    rel = TruncatedSeries([Fraction(X[k]) / c2 for k in range(2, N + 3)], 0, N).truncate(N)
    h = (rel - 1).log1p().scale(Fraction(1, 2)).exp()
    H = h.inv()  # w = (zeta / sigma) * H(w)
    inv_sigma = ring.one() / sigma
    w = TruncatedSeries([0, inv_sigma], 0, N)
    for _ in range(N + 1):
        w = TruncatedSeries([0, inv_sigma], 0, N).mul(H.map(ring.coerce).compose(w), cap=N)
    Yser = TruncatedSeries([ring.coerce(Fraction(c)) for c in Y[:N + 1]], 0, N)
    y = Yser.compose(w)
    t = {k + 2: y.coefficient(k) for k in range(0, K_max - 1)}
    flip = False
    if orient is not None and t[3] != ring.coerce(orient):
        if t[3] == -ring.coerce(orient):
            flip = True
        else:
            raise CurveSpecError("t[3]", f"cannot orient t_3={t[3]} to {orient}")
    if flip:
        t = {k: (-v if k % 2 else v) for k, v in t.items()}
    if not keep_t2:
        t.pop(2, None)
    b = [w.coefficient(k) for k in range(N + 1)]
    L = _bivariate_log_box(b, M_max + 2)
    B = {}
    for k in range(M_max + 1):
        for l in range(M_max + 1):
            v = L.get((k + 1, l + 1), 0) * ((k + 1) * (l + 1))
            if flip and (k + l) % 2:
                v = -v
            if v:
                B[(k, l)] = v
    return LocalCurveData(ring, t, B, K_max, M_max, x_a, name)


def lambert(K_max: int = 15, M_max: int = 14) -> LocalCurveData:
    """x = -z + ln z, y = z at z = 1; ring Q(s), s^2 = -2, with t_3 = s."""
    N = max(K_max, 2 * M_max + 4) + 4
    X = [Fraction(0), Fraction(0)] + [Fraction((-1) ** (k + 1), k) for k in range(2, N + 2)]
    Y = [Fraction(1), Fraction(1)] + [Fraction(0)] * (N + 1)
    return local_data_from_global(X, Y, K_max, M_max, name="lambert",
                                  orient=QuadExt(0, 1, -2), x_a=Fraction(-1))


def vertex(f: int, K_max: int = 15, M_max: int = 14) -> LocalCurveData:
    """x = -f ln z - ln(1 - z), y = -ln z at z = f/(f+1), integer framing f.

    y(a) = ln((f+1)/f) is transcendental; it is the time t_2, which never
    enters any correlator, and is stored as 0.
    """
    if not isinstance(f, int) or f in (0, -1):
        raise CurveSpecError("f", "local data needs an integer framing f not in {0, -1}; "
                                  "use the class-data path for formal framing")
    a = Fraction(f, f + 1)
    N = max(K_max, 2 * M_max + 4) + 4
    # x(a+w) - x(a) = -f ln(1 + w/a) - ln(1 - w/(1-a))
    X = [Fraction(0)]
    Y = [Fraction(0)]
    for k in range(1, N + 2):
        X.append(-f * Fraction((-1) ** (k + 1), k) / a ** k + Fraction(1, k) / (1 - a) ** k)
        Y.append(-Fraction((-1) ** (k + 1), k) / a ** k)
    return local_data_from_global(X, Y, K_max, M_max, name=f"vertex(f={f})")


@dataclass(frozen=True)
class QuadrangulationCurve:
    """x = gamma (z + 1/z), y = t/(gamma z) - t4 gamma^3 z^-3.

    gamma^2 = (1 - sqrt(1 - 12 t t4)) / (6 t4).  Branchpoints at z = +1 and
    z = -1, so the single-branchpoint recursion does not apply.
    """

    t: Fraction
    t4: Fraction
    branchpoints: tuple = (1, -1)
    multi_branchpoint: bool = True

    def gamma_squared_data(self) -> dict:
        """gamma^2 = (1 - sqrt(D)) / (6 t4) with D = 1 - 12 t t4."""
        return {"D": 1 - 12 * self.t * self.t4, "denominator": 6 * self.t4}

    def branchpoint_abscissae(self) -> dict:
        return {"x(+1)": "2*gamma", "x(-1)": "-2*gamma"}


def quadrangulation(t, t4) -> QuadrangulationCurve:
    return QuadrangulationCurve(Fraction(t), Fraction(t4))


PRESETS = ("airy", "deformed-airy", "weil-petersson", "lambert", "vertex", "quadrangulation")


def preset_local_data(name: str, K_max: int = 15, M_max: int = 14, **params) -> LocalCurveData:
    if name == "airy":
        return airy(K_max, M_max)
    if name == "deformed-airy":
        return deformed_airy(params["times"], params.get("B"), K_max, M_max)
    if name == "weil-petersson":
        return weil_petersson(K_max, M_max)
    if name == "lambert":
        return lambert(K_max, M_max)
    if name == "vertex":
        f = params.get("f")
        if isinstance(f, Fraction) and f.denominator == 1:
            f = int(f)
        return vertex(f, K_max, M_max)
    if name == "quadrangulation":
        raise CurveSpecError("preset", "quadrangulation has two branchpoints; no local data")
    raise CurveSpecError("preset", f"unknown preset {name!r}")
