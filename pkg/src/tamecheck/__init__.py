"""Exact analysis of one-parameter polynomial deformations of singular germs."""

from .errors import BudgetExceeded, ParseError, TamecheckError, ValidationError
from .exprparse import DeformationProblem, VarContext, parse_polynomial, parse_problem_file, tokenize
from .poly import Arc, Polynomial, arc_compose, arc_order, t_expansion, translate_to_point

__version__ = "0.1.0"

__all__ = [
    "Arc",
    "BudgetExceeded",
    "DeformationProblem",
    "ParseError",
    "Polynomial",
    "TamecheckError",
    "ValidationError",
    "VarContext",
    "arc_compose",
    "arc_order",
    "parse_polynomial",
    "parse_problem_file",
    "t_expansion",
    "tokenize",
    "translate_to_point",
]
