import pytest
import sympy
from hypothesis import given, strategies as st

from conftest import operators, shapes
from jetkernel.algebra import GF, QQ, ExactMatrix, Poly, PolyVec, determinant, rank
from jetkernel.dsl import parse_operator
from jetkernel.kernel import (codomain_bound, find_plateau, kernel_basis, kernel_dimension,
                              kernel_dims, kernel_scan, semicontinuity_scan, truncation_matrix,
                              zero_kernel_certificate)
from jetkernel.operators import MatrixOperator, op_apply

x = Poly.variable(0, 1)


def P(text, nvars=1, field=QQ):
    return parse_operator(text, nvars, field)


def sympy_rank(M: ExactMatrix) -> int:
    # exact fraction-free rank over QQ; Matrix.rank() can stall on dense rational input
    if not (M.rows and M.cols):
        return 0
    S = sympy.Matrix(M.rows, M.cols, lambda i, j: sympy.Rational(
        M[i, j].numerator, M[i, j].denominator))
    return S.to_DM().convert_to(sympy.QQ).rank()


class TestTruncationMatrix:
    def test_identity(self):
        T = truncation_matrix(MatrixOperator.identity(1, 1), 1)
        assert T.matrix == ExactMatrix.identity(2)

    def test_first_derivative(self):
        T = truncation_matrix(P("h(1,1)"), 2)
        # columns: D(1) = 0, D(x) = 1, D(x^2) = 2x; the x^2 row is zero padding
        assert T.matrix.data == [[0, 1, 0], [0, 0, 2], [0, 0, 0]]
        assert [J for J, _ in T.codomain_basis] == [(0,), (1,), (2,)]

    def test_zero_operator(self):
        T = truncation_matrix(MatrixOperator.zero(2, 2), 2)
        assert not any(any(row) for row in T.matrix.data)

    def test_codomain_bound_uses_positive_shift_only(self):
        assert codomain_bound(P("x1^3*h(1,1)"), 4) == 6
        assert codomain_bound(P("h(1,2)"), 4) == 4


class TestKernelBasis:
    def test_examples(self):
        for n in range(5):
            assert kernel_basis(P("h(1,1)"), n) == [PolyVec([Poly.one(1)])]
        assert kernel_basis(P("x1*h(1,1) - 1"), 3) == [PolyVec([x])]
        D = P("h(1,1); 0\nx1*h(1,1); h(1,1)")
        one, zero = Poly.one(1), Poly.zero(1)
        assert kernel_basis(D, 5) == [PolyVec([one, zero]), PolyVec([zero, one])]

    @given(st.data(), shapes())
    def test_soundness_and_rank_nullity(self, data, shape):
        r, n, F = shape
        D = data.draw(operators(r, n, F, N=2, M=1))
        deg = data.draw(st.integers(0, 3))
        basis = kernel_basis(D, deg)
        for v in basis:
            assert not any(op_apply(D, v))
            assert v.degree <= deg
        T = truncation_matrix(D, deg)
        assert len(basis) == T.matrix.cols - rank(T.matrix)
        assert kernel_dimension(D, deg) == len(basis)

    @given(st.data(), shapes(max_r=2, max_vars=2))
    def test_dims_match_sympy_rank(self, data, shape):
        r, n, _ = shape
        D = data.draw(operators(r, n, QQ, N=2, M=2))
        dims = kernel_dims(D, 4)
        for deg, d in enumerate(dims):
            T = truncation_matrix(D, deg).matrix
            assert d == T.cols - sympy_rank(T)


class TestScan:
    def test_identity(self):
        rep = kernel_scan(MatrixOperator.identity(1, 1), 5)
        assert rep.dims_list == [0] * 6 and rep.stabilized_at == 0

    def test_char_p(self):
        rep = kernel_scan(P("h(1,1)", field=GF(3)), 7)
        assert rep.dims_list == [1, 1, 1, 2, 2, 2, 3, 3]
        F = GF(3)
        expected = [PolyVec([Poly.monomial((k,), 1, F)]) for k in (0, 3, 6)]
        assert rep.bases[7] == expected
        # a plateau of three is reported yet broken later: only a bound
        assert find_plateau(rep.dims_list[:6], 3) == 3

    def test_char_p_brute_force(self):
        for p in (2, 3, 5):
            dims = kernel_dims(P("h(1,1)", field=GF(p)), 10)
            assert dims == [sum(1 for k in range(n + 1) if k % p == 0) for n in range(11)]

    def test_zero_operator_never_stabilises(self):
        rep = kernel_scan(MatrixOperator.zero(1, 1), 6)
        assert rep.dims_list == list(range(1, 8)) and rep.stabilized_at is None

    @given(st.data(), shapes())
    def test_monotone_and_nested(self, data, shape):
        r, n, F = shape
        D = data.draw(operators(r, n, F, N=2, M=1))
        rep = kernel_scan(D, 3)
        assert rep.nested
        assert all(a <= b for a, b in zip(rep.dims_list, rep.dims_list[1:]))
        for deg in range(3):
            for v in rep.bases[deg]:
                assert not any(op_apply(D, v))

    def test_report_shapes(self):
        rep = kernel_scan(P("h(1,1)"), 3)
        d = rep.to_dict()
        assert d["dims"] == [1, 1, 1, 1] and d["bases"]["0"] == [["1"]]
        assert rep.csv_rows()[0] == (0, 1, True)
        assert "dimension >= observed" in rep.notes

    def test_find_plateau(self):
        assert find_plateau([0, 1, 1, 1], 3) == 1
        assert find_plateau([0, 1, 1], 3) is None
        assert find_plateau([], 3) is None

    def test_negative_degree(self):
        with pytest.raises(ValueError):
            kernel_scan(P("h(1,1)"), -1)


class TestCertificate:
    def test_identity(self):
        c = zero_kernel_certificate(MatrixOperator.identity(1, 1), 2)
        assert c.minor_value == 1 and c.col_indices == (0, 1, 2)

    def test_absent_with_kernel(self):
        for n in range(4):
            assert zero_kernel_certificate(P("h(1,1)"), n) is None

    def test_triangular_example(self):
        D = P("1 + x1; 0\nh(1,1); 2")
        c = zero_kernel_certificate(D, 4)
        T = truncation_matrix(D, 4).matrix
        sub = T.submatrix(c.row_indices, c.col_indices)
        assert c.minor_value == determinant(sub) != 0
        assert kernel_basis(D, 4) == []
        assert c.to_dict()["minor_value"] == str(c.minor_value)

    @given(st.data(), shapes(max_r=2, max_vars=2))
    def test_soundness(self, data, shape):
        r, n, F = shape
        D = data.draw(operators(r, n, F, N=1, M=1))
        deg = data.draw(st.integers(0, 3))
        c = zero_kernel_certificate(D, deg)
        if c is None:
            assert kernel_dimension(D, deg) > 0
        else:
            T = truncation_matrix(D, deg).matrix
            assert determinant(T.submatrix(c.row_indices, c.col_indices)) == c.minor_value
            assert c.minor_value and not kernel_basis(D, deg)


class TestSemicontinuity:
    def test_examples(self):
        rep = semicontinuity_scan(MatrixOperator.zero(1, 1), MatrixOperator.identity(1, 1),
                                  range(4), 2)
        assert {int(t): d for t, d in rep.dims.items()} == {0: 3, 1: 0, 2: 0, 3: 0}
        assert rep.special == [0]
        rep = semicontinuity_scan(P("h(1,1)"), MatrixOperator.identity(1, 1), range(6), 6)
        assert {int(t): d for t, d in rep.dims.items()} == {0: 1, 1: 0, 2: 0, 3: 0, 4: 0, 5: 0}
        rep = semicontinuity_scan(P("h(1,1)"), MatrixOperator.zero(1, 1), range(3), 3)
        assert rep.constant_family and rep.special == []

    def test_special_locus_is_proper(self):
        rep = semicontinuity_scan(P("x1*h(1,1)"), P("-1"), range(10), 5)
        assert [int(t) for t in rep.special] == [0, 1, 2, 3, 4, 5]
        assert len(rep.special) < len(rep.dims)

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            semicontinuity_scan(P("h(1,1)"), MatrixOperator.identity(2, 1), [0], 1)
