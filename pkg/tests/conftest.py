import os

from hypothesis import HealthCheck, settings, strategies as st

from jetkernel.algebra import GF, QQ, Poly, PolyVec
from jetkernel.algebra import multiindex as mi
from jetkernel.operators import MatrixOperator

settings.register_profile(
    "default", max_examples=40, deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.register_profile("ci", max_examples=150, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

FIELDS = [QQ, GF(2), GF(3), GF(5), GF(7)]

fields = st.sampled_from(FIELDS)
small_ints = st.integers(min_value=-9, max_value=9)


@st.composite
def polys(draw, nvars=1, field=QQ, max_deg=3, max_terms=5):
    monos = mi.monomials_upto(nvars, max_deg)
    keys = draw(st.lists(st.sampled_from(monos), max_size=max_terms, unique=True))
    return Poly({J: draw(small_ints) for J in keys}, nvars, field)


@st.composite
def polyvecs(draw, r=1, nvars=1, field=QQ, max_deg=4):
    return PolyVec(draw(polys(nvars, field, max_deg)) for _ in range(r))


@st.composite
def operators(draw, r=1, nvars=1, field=QQ, N=2, M=2, max_terms=4):
    coeffs = {}
    for i in range(r):
        for j in range(r):
            Is = draw(st.lists(st.sampled_from(mi.monomials_upto(nvars, N)),
                               max_size=max_terms, unique=True))
            for I in Is:
                coeffs[(i, j, I)] = draw(polys(nvars, field, M, 3))
    return MatrixOperator.from_coefficients(coeffs, r, nvars, field)


@st.composite
def shapes(draw, max_r=2, max_vars=2):
    return draw(st.integers(1, max_r)), draw(st.integers(1, max_vars)), draw(fields)


# acceptance criteria append (number, title, passed, detail); printed at session end
ACCEPTANCE: list = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num, title, passed, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(
            f"[{'PASS' if passed else 'FAIL'}] {num:2d}. {title}: {detail}")
