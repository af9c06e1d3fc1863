import pytest
from hypothesis import given, strategies as st

from conftest import operators, shapes
from jetkernel.algebra import GF, QQ, Poly
from jetkernel.dsl import (ParseError, format_dop, format_operator, parse_dop,
                           parse_operator, parse_scalar_operator)
from jetkernel.operators import MatrixOperator, ScalarOperator

x = Poly.variable(0, 1)


class TestParse:
    def test_examples(self):
        assert parse_scalar_operator("h(1,1)", 1) == ScalarOperator.hasse((1,), 1)
        op = parse_scalar_operator("x1^2*h(1,2) + 3", 1)
        assert op == ScalarOperator.hasse((2,), 1, coeff=x * x) + \
            ScalarOperator.multiplication(Poly.constant(3, 1))
        assert parse_scalar_operator("d(1)^2", 1) == ScalarOperator.hasse((2,), 1).scale(2)

    def test_star_is_composition(self):
        lhs = parse_scalar_operator("h(1,1)*x1", 1)
        assert lhs == parse_scalar_operator("x1*h(1,1) + 1", 1)

    def test_rationals_and_signs(self):
        op = parse_scalar_operator("-1/2*x1 - -x1", 1)
        assert op == ScalarOperator.multiplication(x * QQ("1/2"))
        F = GF(5)
        op = parse_scalar_operator("1/2", 1, F)
        assert op == ScalarOperator.multiplication(Poly.constant(3, 1, F))

    def test_classical_derivative_rejected_in_char_p(self):
        with pytest.raises(ParseError, match="d\\(1\\)"):
            parse_scalar_operator("d(1)", 1, GF(3))

    @pytest.mark.parametrize("text,pos", [
        ("h(1,", 4), ("x1 + * 2", 5), ("x3", 0), ("2 $ 3", 2), ("1/0", 0)])
    def test_syntax_errors_report_position(self, text, pos):
        with pytest.raises(ParseError) as info:
            parse_scalar_operator(text, 2)
        assert info.value.pos == pos
        assert f"position {pos}" in str(info.value)

    def test_denominator_vanishing_mod_p(self):
        with pytest.raises(ParseError):
            parse_scalar_operator("1/3", 1, GF(3))

    def test_grid(self):
        D = parse_operator("h(1,1); 0\n1; h(1,1)", 1)
        assert D.r == 2 and D.entries[1][0] == ScalarOperator.identity(1)
        assert parse_operator([["h(1,1)", "0"], ["1", "h(1,1)"]], 1) == D
        assert parse_operator(["h(1,1); 0", "1; h(1,1)"], 1) == D
        with pytest.raises(ParseError, match="not square"):
            parse_operator("1; 2\n3", 1)

    def test_empty_is_zero(self):
        assert parse_operator("", 1) == MatrixOperator.zero(1, 1)


class TestFormat:
    def test_examples(self):
        assert format_operator(parse_operator("h(1,1)*x1", 1)) == "x1*h(1,1) + 1"
        assert format_operator(MatrixOperator.zero(2, 1)) == "0; 0\n0; 0"
        assert format_operator(parse_operator("-h(1,2)*h(2,1)", 2)) == "-h(1,2)*h(2,1)"

    @given(st.data(), shapes())
    def test_roundtrip(self, data, shape):
        r, n, F = shape
        D = data.draw(operators(r, n, F))
        assert parse_operator(format_operator(D), n, F) == D


class TestDop:
    def test_directives_and_comments(self):
        text = "# a witness\n@nvars 2\n@field GF(5)\n\nh(1,1); 0  # top\nx2; h(2,1)\n"
        D = parse_dop(text)
        assert D.nvars == 2 and D.field == GF(5) and D.r == 2

    def test_inferred_nvars(self):
        assert parse_dop("x3*h(1,1)").nvars == 3
        assert parse_dop("2").nvars == 1

    def test_explicit_arguments_win(self):
        D = parse_dop("@nvars 1\n@field Q\nh(1,1)", nvars=2, field=GF(3))
        assert D.nvars == 2 and D.field == GF(3)

    def test_errors(self):
        with pytest.raises(ParseError, match="directive"):
            parse_dop("@colour red\n1")
        with pytest.raises(ParseError, match="no operator"):
            parse_dop("# nothing\n")

    @given(st.data(), shapes())
    def test_roundtrip(self, data, shape):
        r, n, F = shape
        D = data.draw(operators(r, n, F))
        assert parse_dop(format_dop(D)) == D
