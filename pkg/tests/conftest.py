import re
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from vfide_ham import ExpPoly, PowerNonlinearity, SeparableKernel, VFIDEProblem

# results reported by test_acceptance.py, printed in the terminal summary
ACCEPTANCE_RESULTS = {}


def exp_polys(max_terms=5, rates=(-1, 0, 1, 2), max_power=4, coeff_range=10):
    """Small random exp-polynomials with integer coefficients."""
    term = st.tuples(
        st.tuples(st.integers(0, max_power), st.sampled_from(rates)),
        st.integers(-coeff_range, coeff_range),
    )
    return st.lists(term, max_size=max_terms).map(ExpPoly)


def polys(max_terms=3, max_power=3, coeff_range=5):
    term = st.tuples(
        st.tuples(st.integers(0, max_power), st.just(0)),
        st.fractions(min_value=-coeff_range, max_value=coeff_range, max_denominator=4),
    )
    return st.lists(term, max_size=max_terms).map(ExpPoly)


@st.composite
def small_problems(draw):
    """Random polynomial problems of order 1 or 2 with one Volterra and one Fredholm part."""
    p = draw(st.integers(1, 2))
    split = tuple(draw(st.lists(polys(max_terms=2, max_power=2), min_size=1, max_size=3)))
    alphas = tuple(draw(st.lists(st.integers(-2, 2), min_size=p, max_size=p)))
    k1 = SeparableKernel(((draw(polys(max_terms=1, max_power=1)), ExpPoly.const(1)),))
    k2 = SeparableKernel(((ExpPoly.const(1), draw(polys(max_terms=1, max_power=1))),))
    degree = draw(st.integers(1, 2))
    return VFIDEProblem(
        p=p,
        split=split,
        alphas=alphas,
        lambda1=draw(st.sampled_from([0, 1, Fraction(-1, 2)])),
        lambda2=draw(st.sampled_from([0, 1, Fraction(1, 3)])),
        kernel1=k1,
        kernel2=k2,
        f1=PowerNonlinearity.power(degree),
        f2=PowerNonlinearity.power(1),
    )


@pytest.fixture
def t():
    return ExpPoly.monomial(1)


@pytest.fixture
def et():
    return ExpPoly.exp(1)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    def natural(key):
        return [int(part) if part.isdigit() else part for part in re.split(r"(\d+)", key)]

    for key in sorted(ACCEPTANCE_RESULTS, key=natural):
        ok, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"criterion {key:<6} {'PASS' if ok else 'FAIL'}  {detail}")
