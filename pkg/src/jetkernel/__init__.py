"""Exact polynomial kernels of matrices of linear differential operators.

Operators are stored against Hasse (divided-power) derivatives
``h^[I] x^J = C(J, I) x^(J - I)``, which makes everything work verbatim over
the rationals and over prime fields GF(p).
"""

from .algebra import GF, QQ, Field, Poly, PolyVec, parse_field
from .dsl import ParseError, format_operator, parse_dop, parse_operator
from .jets import (JetElement, JetLinearMap, base_change_check, jet_map_to_op,
                   jet_presentation, op_to_jet_map, taylor_jet)
from .kernel import (KernelReport, ZeroKernelCertificate, kernel_basis, kernel_dimension,
                     kernel_dims, kernel_scan, semicontinuity_scan, truncation_matrix,
                     zero_kernel_certificate)
from .operators import (InvertiblePolyMatrix, MatrixOperator, PolyAutomorphism,
                        ScalarOperator, conjugate_glr, op_apply, op_compose,
                        pullback_automorphism)

__version__ = "0.1.0"

__all__ = [
    "GF", "QQ", "Field", "Poly", "PolyVec", "parse_field",
    "ParseError", "format_operator", "parse_dop", "parse_operator",
    "JetElement", "JetLinearMap", "base_change_check", "jet_map_to_op", "jet_presentation",
    "op_to_jet_map", "taylor_jet",
    "KernelReport", "ZeroKernelCertificate", "kernel_basis", "kernel_dimension", "kernel_dims",
    "kernel_scan", "semicontinuity_scan", "truncation_matrix", "zero_kernel_certificate",
    "InvertiblePolyMatrix", "MatrixOperator", "PolyAutomorphism", "ScalarOperator",
    "conjugate_glr", "op_apply", "op_compose", "pullback_automorphism",
    "__version__",
]
