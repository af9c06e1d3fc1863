"""Exact fields, multi-indices, sparse polynomials and linear algebra."""

from .fields import GF, QQ, Field, ModInt, Scalar, format_scalar, is_prime, parse_field
from .linalg import (ColumnEchelon, ExactMatrix, bareiss_determinant, determinant,
                     echelonize, in_span, nullspace, rank, rref)
from .multiindex import MultiIndex, monomials_upto
from .poly import (NEG_INF, DimensionError, Poly, PolyVec, hasse_derivative,
                   multi_binomial, poly_arith)

__all__ = [
    "GF", "QQ", "Field", "ModInt", "Scalar", "format_scalar", "is_prime", "parse_field",
    "ColumnEchelon", "ExactMatrix", "bareiss_determinant", "determinant", "echelonize",
    "in_span", "nullspace", "rank", "rref", "MultiIndex", "monomials_upto", "NEG_INF",
    "DimensionError", "Poly", "PolyVec", "hasse_derivative", "multi_binomial", "poly_arith",
]
