"""Exact topological recursion at one branchpoint and the matching intersection numbers."""

from .algebra import QuadExt, RatFunc, Ring, TruncatedSeries, format_scalar, parse_scalar
from .bridge import (bhat_from_B, bhat_genfun, curve_class, dual_times, elsv_hurwitz, lambert_class,
                     mv_coefficient, vertex_class, wp_volume)
from .classdata import ClassData, hodge_class
from .curves import LocalCurveData, airy, curve_from_json, deformed_airy, load_curve_spec
from .intersect import (boundary_class_correlator, hodge_class_correlator, kappa_psi_correlator,
                        mainformula_free_energy, mainformula_tensor, psi_correlator, psi_oracle_airy)
from .toprec import CorrelatorTensor, TopologicalRecursion, compute_Fg, recursion_step

__version__ = "0.1.0"

__all__ = [
    "QuadExt", "RatFunc", "Ring", "TruncatedSeries", "format_scalar", "parse_scalar",
    "bhat_from_B", "bhat_genfun", "curve_class", "dual_times", "elsv_hurwitz", "lambert_class",
    "mv_coefficient", "vertex_class", "wp_volume", "ClassData", "hodge_class",
    "LocalCurveData", "airy", "curve_from_json", "deformed_airy", "load_curve_spec",
    "boundary_class_correlator", "hodge_class_correlator", "kappa_psi_correlator",
    "mainformula_free_energy", "mainformula_tensor", "psi_correlator", "psi_oracle_airy",
    "CorrelatorTensor", "TopologicalRecursion", "compute_Fg", "recursion_step",
]
