"""Implicit equations of rational hypersurfaces from graded pieces of the Z-complex."""
from .baselocus import BaseLocusReport, DimClass, analyze_base_locus, saturate_truncated
from .elim import build_piece, det_complex, fitting_gcd, squarefree_part, verify_vanishing
from .errors import (
    DegeneracyError,
    ImplicitizationError,
    InconsistencyError,
    InputError,
    NonAcyclicError,
    NotDivisibleError,
    ParseError,
    RankDeficiencyError,
)
from .parse import parse_poly
from .pipeline import ImplicitReport, run_analyze, run_implicitize, run_verify
from .poly import Polynomial, gcd_poly
from .problem import Options, ProblemInput, make_problem, parse_input

__version__ = "0.1.0"

__all__ = [
    "BaseLocusReport", "DegeneracyError", "DimClass", "ImplicitReport", "ImplicitizationError",
    "InconsistencyError", "InputError", "NonAcyclicError", "NotDivisibleError", "Options",
    "ParseError", "Polynomial", "ProblemInput", "RankDeficiencyError", "analyze_base_locus",
    "build_piece", "det_complex", "fitting_gcd", "gcd_poly", "make_problem", "parse_input",
    "parse_poly", "run_analyze", "run_implicitize", "run_verify", "saturate_truncated",
    "squarefree_part", "verify_vanishing",
]
