import itertools
import math
import pickle
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from conftest import FIELDS, fields, polys, small_ints
from jetkernel.algebra import (GF, NEG_INF, QQ, ColumnEchelon, DimensionError, ExactMatrix,
                               Poly, PolyVec, bareiss_determinant, determinant,
                               echelonize, hasse_derivative, in_span, is_prime, multi_binomial,
                               nullspace, parse_field, poly_arith, rank, rref)
from jetkernel.algebra import multiindex as mi

X = sympy.symbols("x1:4")


def to_sympy(p: Poly):
    return sum((sympy.Rational(c.numerator, c.denominator)
                * sympy.Mul(*[X[k] ** e for k, e in enumerate(J)])
                for J, c in p.terms.items()), sympy.Integer(0))


# fields -------------------------------------------------------------------

class TestFields:
    def test_modint_arithmetic_matches_integers(self):
        for p in (2, 3, 7):
            F = GF(p)
            for a, b in itertools.product(range(-p, 2 * p), repeat=2):
                assert F(a) + F(b) == F(a + b)
                assert F(a) * F(b) == F(a * b)
                assert F(a) - F(b) == F(a - b)
                if b % p:
                    assert (F(a) / F(b)) * F(b) == F(a)

    def test_inverse_of_zero_raises(self):
        with pytest.raises(ZeroDivisionError):
            GF(5)(0).inverse()

    def test_fraction_coercion(self):
        assert GF(7)("1/3") * 3 == 1
        assert QQ("2/4") == Fraction(1, 2)
        with pytest.raises(ZeroDivisionError):
            GF(3)(Fraction(1, 3))

    def test_parse_field(self):
        assert parse_field("Q") is QQ or parse_field("Q") == QQ
        assert parse_field("GF(7)") == GF(7)
        assert parse_field(5) == GF(5)
        assert parse_field("11").characteristic == 11
        with pytest.raises(ValueError):
            parse_field("GF(6)")
        with pytest.raises(ValueError):
            parse_field("R")

    def test_is_prime(self):
        assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]

    def test_modint_pickles(self):
        x = GF(11)(4)
        assert pickle.loads(pickle.dumps(x)) == x

    def test_mixed_characteristic_rejected(self):
        with pytest.raises((TypeError, ValueError)):
            GF(3)(1) + GF(5)(1)

    def test_factorial_vanishes_mod_p(self):
        assert not GF(3).factorial(3)
        assert GF(5).factorial(4) == 24


# multi-indices ------------------------------------------------------------

class TestMultiIndex:
    @pytest.mark.parametrize("nvars,d", [(1, 4), (2, 3), (3, 2)])
    def test_counts_match_enumeration(self, nvars, d):
        brute = [J for J in itertools.product(range(d + 1), repeat=nvars) if sum(J) <= d]
        got = mi.monomials_upto(nvars, d)
        assert sorted(got) == sorted(brute)
        assert mi.count_upto(nvars, d) == len(brute) == math.comb(nvars + d, nvars)

    def test_graded_order_is_degree_major(self):
        degs = [sum(J) for J in mi.monomials_upto(2, 4)]
        assert degs == sorted(degs)

    def test_binomial_examples(self):
        assert mi.binomial((2,), (1,)) == 2
        assert mi.binomial((3, 1), (1, 1)) == 3
        assert multi_binomial((2,), (1,), GF(2)) == 0

    @given(st.tuples(st.integers(0, 4), st.integers(0, 4)),
           st.tuples(st.integers(0, 4), st.integers(0, 4)))
    def test_binomial_zero_iff_not_leq(self, J, I):
        assert (mi.binomial(J, I) == 0) == (not mi.leq(I, J))

    def test_iter_below(self):
        assert sorted(mi.iter_below((1, 2))) == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            mi.binomial((1,), (1, 0))


# polynomials --------------------------------------------------------------

class TestPoly:
    def test_examples(self):
        x = Poly.variable(0, 1)
        assert (x + 1) * (x - 1) == x * x - 1
        assert (x * 0).terms == {}
        y = Poly.variable(0, 1, GF(2))
        assert (y + 1) ** 2 == y * y + 1

    def test_zero_degree_sentinel(self):
        assert Poly.zero(2).degree == NEG_INF
        assert Poly.one(2).degree == 0

    def test_ring_mismatch(self):
        with pytest.raises(DimensionError):
            Poly.one(1) + Poly.one(2)
        with pytest.raises(DimensionError):
            Poly.one(1) + Poly.one(1, GF(3))

    @given(polys(2), polys(2), polys(2))
    def test_ring_axioms(self, p, q, s):
        assert (p * q) * s == p * (q * s)
        assert p * (q + s) == p * q + p * s
        assert p * q == q * p
        assert p + q == q + p
        assert p - p == Poly.zero(2)

    @given(polys(2), polys(2))
    def test_degree_additive_over_q(self, p, q):
        if p and q:
            assert (p * q).degree == p.degree + q.degree

    @given(polys(3, max_deg=3), polys(3, max_deg=2))
    def test_product_matches_sympy(self, p, q):
        assert to_sympy(p * q).expand() == (to_sympy(p) * to_sympy(q)).expand()

    @given(st.data(), fields)
    def test_axioms_over_every_field(self, data, F):
        p, q, s = (data.draw(polys(2, F)) for _ in range(3))
        assert (p + q) * s == p * s + q * s
        assert (p * q) * s == p * (q * s)

    @given(polys(2), st.tuples(small_ints, small_ints), polys(2), polys(2))
    def test_evaluate_and_substitute_are_homomorphisms(self, p, pt, a, b):
        assert (p * p).evaluate(pt) == p.evaluate(pt) ** 2
        assert (p + p).substitute([a, b]) == p.substitute([a, b]) * 2
        expected = to_sympy(p).subs({X[0]: to_sympy(a), X[1]: to_sympy(b)}, simultaneous=True)
        assert to_sympy(p.substitute([a, b])).expand() == sympy.expand(expected)

    def test_poly_arith(self):
        x = Poly.variable(0, 1)
        assert poly_arith(x, x, "add") == x * 2
        assert poly_arith(x, x, "mul") == x ** 2
        assert poly_arith(x, 3, "scalar_mul") == x * 3
        with pytest.raises(ValueError):
            poly_arith(x, x, "div")

    def test_str(self):
        x, y = Poly.variable(0, 2), Poly.variable(1, 2)
        assert str(x * x * 3 - y + Fraction(1, 2)) == "3*x1^2 - x2 + 1/2"
        assert str(Poly.zero(2)) == "0"

    def test_polyvec(self):
        x = Poly.variable(0, 1)
        v = PolyVec([x, Poly.one(1)])
        assert v + v == v.scale(2)
        assert v.degree == 1
        assert not PolyVec.zero(2, 1)
        with pytest.raises(DimensionError):
            v + PolyVec([x])


class TestHasseDerivative:
    def test_examples(self):
        x = Poly.variable(0, 1)
        assert hasse_derivative(x ** 2, (1,)) == x * 2
        assert hasse_derivative(x ** 2, (2,)) == Poly.one(1)
        y = Poly.variable(0, 1, GF(2))
        assert hasse_derivative(y ** 2, (1,)) == Poly.zero(1, GF(2))
        assert hasse_derivative(y ** 2, (2,)) == Poly.one(1, GF(2))

    @given(polys(2, max_deg=5), st.tuples(st.integers(0, 3), st.integers(0, 3)))
    def test_matches_sympy_classical_over_factorial(self, p, I):
        expected = sympy.diff(to_sympy(p), X[0], I[0], X[1], I[1]) / mi.factorial(I) \
            if any(I) else to_sympy(p)
        assert to_sympy(hasse_derivative(p, I)).expand() == sympy.expand(expected)

    @given(st.data(), st.sampled_from(FIELDS[1:]))
    def test_reduction_commutes_with_hasse(self, data, F):
        p = data.draw(polys(2, max_deg=5))
        I = data.draw(st.tuples(st.integers(0, 3), st.integers(0, 3)))
        assert hasse_derivative(p, I).change_field(F) == hasse_derivative(p.change_field(F), I)


# linear algebra -----------------------------------------------------------

matrices = st.integers(1, 5).flatmap(
    lambda rows: st.integers(1, 5).flatmap(
        lambda cols: st.lists(st.lists(st.integers(-3, 3), min_size=cols, max_size=cols),
                              min_size=rows, max_size=rows)))


class TestLinalg:
    def test_nullspace_examples(self):
        assert nullspace(ExactMatrix.identity(3)) == []
        assert len(nullspace(ExactMatrix.zeros(2, 3))) == 3
        (v,) = nullspace(ExactMatrix([[1, 2], [2, 4]]))
        assert v[0] / v[1] == Fraction(-2)

    @given(matrices, fields)
    def test_rank_nullity_and_soundness(self, rows, F):
        M = ExactMatrix(rows, F)
        ns = nullspace(M)
        assert rank(M) + len(ns) == M.cols
        for v in ns:
            assert not any(M.matvec(v))
        if ns:
            assert rank(ExactMatrix(ns, F)) == len(ns)

    @given(matrices)
    def test_rank_matches_sympy(self, rows):
        assert rank(ExactMatrix(rows)) == sympy.Matrix(rows).rank()

    @given(st.integers(1, 5).flatmap(lambda n: st.lists(
        st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n, max_size=n)))
    def test_determinant_three_ways(self, rows):
        d = determinant(ExactMatrix(rows))
        assert d == bareiss_determinant(rows) == sympy.Matrix(rows).det()

    @given(matrices, fields)
    def test_rref_is_reduced(self, rows, F):
        r, pivots = rref(ExactMatrix(rows, F))
        for k, c in enumerate(pivots):
            assert r[k][c] == 1
            assert all(not r[i][c] for i in range(len(r)) if i != k)

    @given(matrices, fields)
    def test_column_echelon_prefix_ranks(self, rows, F):
        M = ExactMatrix(rows, F)
        ce = ColumnEchelon(F)
        for j in range(M.cols):
            ce.add_column({i: x for i, x in enumerate(M.column(j)) if x})
        for c in range(M.cols + 1):
            sub = M.submatrix(range(M.rows), range(c))
            assert ce.rank_of_prefix(c) == (rank(sub) if c else 0)
        for combo in ce.kernel:
            v = [combo[1].get(k, F.zero) for k in range(M.cols)]
            assert not any(M.matvec(v))

    @given(st.integers(1, 5).flatmap(lambda n: st.lists(
        st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=n + 2, max_size=n + 3)),
        fields)
    def test_prefix_minor_is_a_true_minor(self, rows, F):
        M = ExactMatrix(rows, F)
        ce = ColumnEchelon(F, track_kernel=False)
        for j in range(M.cols):
            ce.add_column({i: x for i, x in enumerate(M.column(j)) if x})
        found = ce.prefix_minor(M.cols)
        if found is None:
            assert rank(M) < M.cols
        else:
            rws, det = found
            assert det and det == determinant(M.submatrix(rws, range(M.cols)))

    def test_in_span(self):
        E = echelonize([[1, 1, 0], [0, 1, 1]], QQ)
        assert in_span(E, [1, 2, 1])
        assert not in_span(E, [0, 0, 1])

    def test_ragged(self):
        with pytest.raises(DimensionError):
            ExactMatrix([[1, 2], [3]])
