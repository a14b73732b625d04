"""Exact arithmetic kernel: rationals, polynomials, series, linear algebra."""

from logarr.exact.linalg import RationalMatrix, rank, rank_and_kernel, RrefSpan
from logarr.exact.multipoly import MultiPoly, monomials, monomial_count
from logarr.exact.laurent import LaurentPoly, poly_add, poly_divexact, poly_eval, poly_mul
from logarr.exact.series import TruncatedSeries

__all__ = [
    "RationalMatrix", "rank", "rank_and_kernel", "RrefSpan",
    "MultiPoly", "monomials", "monomial_count",
    "LaurentPoly", "poly_add", "poly_divexact", "poly_eval", "poly_mul",
    "TruncatedSeries",
]
