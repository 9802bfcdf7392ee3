"""Rank-one Z-graded Lie conformal algebras: bracket tables, audits, catalog and classifier."""
from .catalog import build_family, build_module
from .classifier import VSeed, classify_v, extend_v_seed, normal_form
from .core import AlgebraSpec, Element, Report, audit_jacobi, audit_skew, lambda_bracket
from .poly import Poly, parse
from .scalars import Scalar

__all__ = [
    "AlgebraSpec", "Element", "Poly", "Report", "Scalar", "VSeed", "audit_jacobi", "audit_skew",
    "build_family", "build_module", "classify_v", "extend_v_seed", "lambda_bracket",
    "normal_form", "parse",
]
__version__ = "0.1.0"
