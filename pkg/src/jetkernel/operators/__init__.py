"""Scalar and matrix differential operators in the Hasse basis, and the
two group actions on them."""

from .actions import (InvertiblePolyMatrix, PolyAutomorphism, conjugate_glr,
                      pullback_automorphism)
from .core import (ConversionError, MatrixOperator, ReconstructionError, ScalarOperator,
                   classical_to_hasse, compose_scalar, hasse_apply, hasse_to_classical,
                   op_apply, op_compose, recover_coefficients)

__all__ = [
    "InvertiblePolyMatrix", "PolyAutomorphism", "conjugate_glr", "pullback_automorphism",
    "ConversionError", "MatrixOperator", "ReconstructionError", "ScalarOperator",
    "classical_to_hasse", "compose_scalar", "hasse_apply", "hasse_to_classical",
    "op_apply", "op_compose", "recover_coefficients",
]
