"""Word metrics and growth series of the torus bundle groups Z^2 x|_A Z.

``A = [[0, -1], [1, 2k+1]]`` with ``k >= 2``.  Elements are Laurent
polynomial representatives modulo the relation ``X^2 - (2k+1) X + 1``.
"""
from __future__ import annotations

from .group import BallTable, BudgetExceeded, GroupElement, GroupParams, bfs_ball
from .laurent import LaurentPoly, evaluate_rep, format_poly, n_length, parse_poly, word_representative
from .reduction import ReductionError, is_reduced, reduce_full
from .series import (
    CertificationError,
    CertifiedSeries,
    PolyT,
    RationalT,
    assemble_growth_series,
    class_counts_by_degree,
    expand_coeffs,
    summed_class_series,
    transfer_matrix,
)
from .successor import classify, enumerate_reduced, predecessor, succ_effect, successor

__version__ = "0.1.0"

__all__ = [
    "BallTable",
    "BudgetExceeded",
    "GroupElement",
    "GroupParams",
    "bfs_ball",
    "LaurentPoly",
    "evaluate_rep",
    "format_poly",
    "n_length",
    "parse_poly",
    "word_representative",
    "ReductionError",
    "is_reduced",
    "reduce_full",
    "CertificationError",
    "CertifiedSeries",
    "PolyT",
    "RationalT",
    "assemble_growth_series",
    "class_counts_by_degree",
    "expand_coeffs",
    "summed_class_series",
    "transfer_matrix",
    "classify",
    "enumerate_reduced",
    "predecessor",
    "succ_effect",
    "successor",
]
