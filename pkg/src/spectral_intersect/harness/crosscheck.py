"""Entrywise comparison of the recursion against the intersection formula."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from ..bridge import curve_class
from ..curves import LocalCurveData
from ..intersect import mainformula_free_energy, mainformula_tensor
from ..toprec import TopologicalRecursion, dgn


@dataclass
class CrosscheckEntry:
    g: int
    n: int
    degrees: tuple
    toprec: object
    formula: object

    @property
    def equal(self) -> bool:
        return self.toprec == self.formula


@dataclass
class CrosscheckReport:
    fingerprint: str
    max_chi: int
    entries: list = field(default_factory=list)
    timing: dict = field(default_factory=dict)

    @property
    def failures(self) -> list:
        return [e for e in self.entries if not e.equal]

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> dict:
        return {"compared": len(self.entries), "failed": len(self.failures),
                "targets": len(self.timing), "status": "PASS" if self.passed else "FAIL"}

    def to_json(self) -> dict:
        return {
            "curve": self.fingerprint,
            "max_chi": self.max_chi,
            "summary": self.summary(),
            "timing": {f"{g},{n}": round(t, 4) for (g, n), t in sorted(self.timing.items())},
            "entries": [{"g": e.g, "n": e.n, "degrees": list(e.degrees), "toprec": str(e.toprec),
                         "formula": str(e.formula), "equal": e.equal} for e in self.entries],
        }


def stable_targets(max_chi: int) -> list:
    """Stable (g, n) with 2g - 2 + n <= max_chi, n = 0 only for g >= 2."""
    out = []
    for chi in range(1, max_chi + 1):
        for g in range(chi // 2 + 2):
            n = chi - 2 * g + 2
            if n < 0 or (n == 0 and g < 2):
                continue
            out.append((g, n))
    return out


def crosscheck(curve: LocalCurveData, max_chi: int, targets=None) -> CrosscheckReport:
    targets = stable_targets(max_chi) if targets is None else list(targets)
    for g, n in targets:
        curve.check_orders(g, n)
    tr = TopologicalRecursion(curve)
    report = CrosscheckReport(curve.fingerprint(), max_chi)
    for g, n in targets:
        t0 = time.perf_counter()
        cls = curve_class(curve, dgn(g, n))
        if n == 0:
            report.entries.append(CrosscheckEntry(g, 0, (), tr.free_energy(g),
                                                  mainformula_free_energy(g, cls)))
        else:
            A = tr.tensor(g, n)
            B = mainformula_tensor(g, n, cls)
            for key in sorted(set(A.data) | set(B.data)):
                if list(key) == sorted(key):
                    report.entries.append(CrosscheckEntry(g, n, key, A[key], B[key]))
        report.timing[(g, n)] = time.perf_counter() - t0
    return report
