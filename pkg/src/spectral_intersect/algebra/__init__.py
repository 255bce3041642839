from .combinatorics import bernoulli, double_factorial, stirling_coefficient
from .scalars import QuadExt, RatFunc, Ring, format_scalar, parse_scalar
from .series import TruncatedSeries, TruncationError, VariableMismatch

__all__ = [
    "bernoulli", "double_factorial", "stirling_coefficient",
    "QuadExt", "RatFunc", "Ring", "format_scalar", "parse_scalar",
    "TruncatedSeries", "TruncationError", "VariableMismatch",
]
