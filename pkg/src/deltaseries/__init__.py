"""Exact arithmetic for delta series, their Stirling triangles, associated
logarithms, and Bernoulli families, over Q and Q(lambda)."""

from . import classical, cli, errors, exprparse, fps, presets, scalar, stirling, verify
from .errors import DeltaSeriesError
from .exprparse import eval_expr, parse, pretty, require_delta
from .fps import DeltaSeries, Series, egf_coeff, invert_newton
from .presets import Preset, make_preset, moment_delta, oracle_log, oracle_s1, oracle_s2
from .scalar import LAMBDA, LPoly, LRat, format_scalar, parse_scalar
from .stirling import (
    Triangle,
    assoc_log,
    bernoulli_assoc,
    compositional_inverse,
    partial_bell,
    s1_assoc,
    s2_assoc,
)

__version__ = "1.0.0"

__all__ = [
    "classical", "cli", "errors", "exprparse", "fps", "presets", "scalar",
    "stirling", "verify",
    "DeltaSeriesError", "DeltaSeries", "Series", "Triangle", "Preset",
    "LPoly", "LRat", "LAMBDA",
    "parse", "pretty", "eval_expr", "require_delta",
    "egf_coeff", "invert_newton", "compositional_inverse",
    "s1_assoc", "s2_assoc", "assoc_log", "bernoulli_assoc", "partial_bell",
    "make_preset", "moment_delta", "oracle_s1", "oracle_s2", "oracle_log",
    "format_scalar", "parse_scalar",
    "__version__",
]
