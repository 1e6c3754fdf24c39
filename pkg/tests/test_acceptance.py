"""Acceptance checks, one test per criterion.

Each test records ``(passed, detail)`` in ``ACCEPTANCE_RESULTS``; the
terminal summary prints one ``criterion <key> PASS/FAIL`` line per entry.
A criterion with sub-rows (3, 5, 6) records one line per row so that a red
row does not hide the green ones. Run on its own with
``pytest tests/test_acceptance.py -v``.
"""
import time
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vfide_ham import ExpPoly, MethodConfig, apply_nonlinearity_coeff, eval_float, pretty_print, run
from vfide_ham.calculus import (
    differentiate,
    repeated_integral,
    repeated_integral_iterated,
    shifted_power,
)
from vfide_ham.homotopy import zero_initial_data_violations
from vfide_ham.problem import PowerNonlinearity
from vfide_ham.reference import (
    EXAMPLE1_EXACT,
    EXAMPLE1_SPLIT_EXACT,
    EXAMPLE1_SPLIT_MHAM,
    EXAMPLE1_SPLIT_MHAM_FIFTHS,
    EXAMPLE1_SPLIT_mHAM,
    EXAMPLE1_SPLIT_NDHAM,
    EXAMPLE1_SHARED_GUESS,
    EXAMPLE2_REF_ADM,
    EXAMPLE2_REF_EXACT,
    EXAMPLE2_GRID,
    EXAMPLE2_REF_NDHAM,
    EXAMPLE2_REF_OQHAM,
    EXAMPLE1_DEFECTS,
    U5_ADM,
    U5_NDHAM,
    U5_OQHAM,
    example1_problem,
    example2_problem,
)

from .conftest import ACCEPTANCE_RESULTS, exp_polys, small_problems

F = Fraction
T = ExpPoly.monomial(1)
E = ExpPoly.exp(1)

# every solution produced here, for the zero-initial-data sweep of criterion 8
RUNS = []


def solve(prob, cfg):
    sol = run(prob, cfg)
    RUNS.append(sol)
    return sol


def record(key, ok, detail):
    ACCEPTANCE_RESULTS[key] = (bool(ok), detail)
    print(f"criterion {key} {'PASS' if ok else 'FAIL'}  {detail}")
    return ok


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


# -- 1 ---------------------------------------------------------------------------

def test_c1_exact_recovery_ndham():
    with Timer() as clock:
        sol = solve(example1_problem(EXAMPLE1_SPLIT_EXACT), MethodConfig("NDHAM", hbar=-1, iterations=5))
    ok = (
        sol.iterates[0] == E
        and all(u.is_zero() for u in sol.iterates[1:])
        and sol.partial_sum() == EXAMPLE1_EXACT
        and clock.elapsed < 1
    )
    record("1", ok, f"u0 = {pretty_print(sol.iterates[0])}, u1..u5 zero, sum = {pretty_print(sol.partial_sum())}"
                    f" ({clock.elapsed:.3f} s)")
    assert ok


# -- 2 ---------------------------------------------------------------------------

def test_c2_exact_guess_ham():
    with Timer() as clock:
        sol = solve(example1_problem(EXAMPLE1_SPLIT_EXACT),
                    MethodConfig("HAM", hbar=-1, iterations=5, initial_guess_override=E))
    ok = all(u.is_zero() for u in sol.iterates[1:]) and clock.elapsed < 1
    record("2", ok, f"HAM from e^t: u1..u5 = {[pretty_print(u) for u in sol.iterates[1:]]} ({clock.elapsed:.3f} s)")
    assert ok


# -- 3 ---------------------------------------------------------------------------

def example1_configs(M):
    guess = EXAMPLE1_SHARED_GUESS
    return {
        "NDHAM": (EXAMPLE1_SPLIT_NDHAM, MethodConfig("NDHAM", hbar=-1, iterations=M)),
        "HAM": (EXAMPLE1_SPLIT_EXACT, MethodConfig("HAM", hbar=-1, iterations=M, initial_guess_override=guess)),
        "MHAM": (EXAMPLE1_SPLIT_MHAM, MethodConfig("MHAM", hbar=-1, iterations=M, initial_guess_override=guess)),
        "mHAM": (EXAMPLE1_SPLIT_mHAM, MethodConfig("mHAM", hbar=-1, iterations=M)),
        "QHAM": (EXAMPLE1_SPLIT_EXACT,
                 MethodConfig("QHAM", hbar=-2, n_qham=2, iterations=M, initial_guess_override=guess)),
    }


def example1_defects(max_M):
    """Defect ``partial_sum(M) - e^s`` for every method and every ``M <= max_M``."""
    out = {}
    for name, (split, cfg) in example1_configs(max_M).items():
        sol = solve(example1_problem(split), cfg)
        out[name] = [sol.partial_sum(M) - EXAMPLE1_EXACT for M in range(max_M + 1)]
    return out


def _row_matches(defects, row, M):
    return {name: defects[name][M] == ExpPoly.monomial(3, c) for name, c in EXAMPLE1_DEFECTS[row].items()}


_C3 = {}


def _c3_state():
    if not _C3:
        with Timer() as clock:
            defects = example1_defects(10)
            # fix the row-index convention from the m = 3 row, then hold it
            conventions = {"M = m - 1": -1, "M = m": 0}
            chosen = [label for label, shift in conventions.items() if all(_row_matches(defects, 3, 3 + shift).values())]
        _C3.update(defects=defects, conventions=conventions, chosen=chosen, elapsed=clock.elapsed)
    return _C3


@pytest.mark.parametrize("row", [3, 5, 10])
def test_c3_example1_defect_rows(row):
    state = _c3_state()
    defects, chosen = state["defects"], state["chosen"]
    if len(chosen) != 1:
        record(f"3.m{row}", False, f"row convention not pinned by the m=3 row: {chosen}")
        pytest.fail("row convention ambiguous")
    shift = state["conventions"][chosen[0]]
    M = row + shift
    matches = _row_matches(defects, row, M)
    ok = all(matches.values()) and state["elapsed"] < 5
    got = ", ".join(f"{name} {pretty_print(defects[name][M])}" for name in matches)
    detail = f"[{chosen[0]}, M={M}] {got} ({state['elapsed']:.3f} s for all rows)"
    if not ok:
        expected = ", ".join(f"{n} {pretty_print(ExpPoly.monomial(3, c))}" for n, c in EXAMPLE1_DEFECTS[row].items())
        other = [lab for lab, s in state["conventions"].items()
                 if row + s <= 10 and all(_row_matches(defects, row, row + s).values())]
        detail += f"; reference {expected}; rows matched under: {other or 'none'}"
    record(f"3.m{row}", ok, detail)
    assert ok


# -- 4 ---------------------------------------------------------------------------

def _interpolate(hbars, polys):
    """Coefficients (in powers of hbar) of the interpolating polynomial with ExpPoly values."""
    n = len(hbars)
    # Newton divided differences, then expand to the monomial basis
    table = list(polys)
    coeffs = [table[0]]
    for level in range(1, n):
        table = [(table[i + 1] - table[i]).scale(1 / (hbars[i + level] - hbars[i])) for i in range(n - level)]
        coeffs.append(table[0])
    basis = [ExpPoly.zero()] * n
    # accumulate prod_{j<k} (h - h_j) as a list of rational coefficients
    poly = [F(1)]
    for k, c in enumerate(coeffs):
        for d, w in enumerate(poly):
            basis[d] = basis[d] + c.scale(w)
        nxt = [F(0)] * (len(poly) + 1)
        for d, w in enumerate(poly):
            nxt[d + 1] += w
            nxt[d] -= w * hbars[k]
        poly = nxt
    return basis


def test_c4_mham_iterates():
    base = E - 1 - T
    hbars = [F(-1), F(1, 2), F(2)]
    probe = F(-2, 3)
    with Timer() as clock:
        m_prob = example1_problem(EXAMPLE1_SPLIT_EXACT)
        m_runs = [solve(m_prob, MethodConfig("mHAM", hbar=h, iterations=2)) for h in hbars]
        y1 = _interpolate(hbars, [r.iterates[1] for r in m_runs])
        y2 = _interpolate(hbars, [r.iterates[2] for r in m_runs])
        cube = ExpPoly.monomial(3, F(1, 36))
        mham_ok = (
            y1 == [base, base, ExpPoly.zero()]
            and y2 == [base, base.scale(2) - cube, base - cube]
        )
        # the quadratic model must also predict an unused hbar
        check = solve(m_prob, MethodConfig("mHAM", hbar=probe, iterations=2))
        mham_ok = mham_ok and check.iterates[2] == base.scale((1 + probe) ** 2) - cube.scale(probe * (1 + probe))

        w_prob = example1_problem(EXAMPLE1_SPLIT_MHAM_FIFTHS)
        w_runs = [solve(w_prob, MethodConfig("MHAM", hbar=h, iterations=2, initial_guess_override=E)) for h in hbars]
        z1 = _interpolate(hbars, [r.iterates[1] for r in w_runs])
        z2 = _interpolate(hbars, [r.iterates[2] for r in w_runs])
        zero = ExpPoly.zero()
        MHAM_ok = (
            z1 == [zero, ExpPoly.monomial(3, F(-1, 30)), zero]
            and z2 == [zero, zero, ExpPoly.monomial(3, F(-29, 900))]
            and w_runs[0].partial_sum() == E + ExpPoly.monomial(3, F(1, 900))
        )
    ok = mham_ok and MHAM_ok and clock.elapsed < 1
    record("4", ok, f"mHAM y1, y2 {'match' if mham_ok else 'DIFFER'}; MHAM y1, y2 {'match' if MHAM_ok else 'DIFFER'};"
                    f" three-term MHAM sum = {pretty_print(w_runs[0].partial_sum())} ({clock.elapsed:.3f} s)")
    assert ok


# -- 5 ---------------------------------------------------------------------------

def test_c5_example2_ndham_ham_series():
    with Timer() as clock:
        sums = {v: solve(example2_problem(), MethodConfig(v, hbar=-1, iterations=5)).partial_sum() for v in ("NDHAM", "HAM")}
    ok = all(s == U5_NDHAM for s in sums.values()) and clock.elapsed < 2
    record("5.nd", ok, f"NDHAM and HAM fifth sums {'equal' if ok else 'differ from'} the reference series"
                       f" ({clock.elapsed:.3f} s)")
    assert ok


def test_c5_example2_qham_series():
    prob = example2_problem()
    with Timer() as clock:
        candidates = {(h, n): solve(prob, MethodConfig("QHAM", hbar=h, n_qham=n, iterations=5))
                      for h, n in ((F(-1), 2), (F(-2), 2))}
        matching = [key for key, sol in candidates.items() if sol.partial_sum() == U5_OQHAM]
        # the reference series does agree with the hbar = -1 HAM iterates summed with (1/2)^m
        ham = solve(prob, MethodConfig("HAM", hbar=-1, iterations=5))
        reweighted = ham.reweighted([F(1, 2**m) for m in range(6)]).partial_sum() == U5_OQHAM
    ok = bool(matching) and clock.elapsed < 2
    tried = ", ".join(f"(hbar={h}, n={n}) t^4 coeff {candidates[(h, n)].partial_sum().coeff(4)}" for h, n in candidates)
    detail = f"q-HAM candidates {tried} vs reference 1/24; matching: {matching or 'none'}"
    detail += f"; HAM(hbar=-1) iterates with (1/2)^m weights {'reproduce' if reweighted else 'do not reproduce'} it"
    record("5.oq", ok, detail)
    assert reweighted
    assert ok, detail


# -- 6 ---------------------------------------------------------------------------

def _max_dev(poly, column):
    return max(abs(eval_float(poly, s) - v) for s, v in zip(EXAMPLE2_GRID, column))


@pytest.mark.parametrize(
    "key, poly, column, tol",
    [
        ("6.nd", U5_NDHAM, EXAMPLE2_REF_NDHAM, 1e-9),
        ("6.oq", U5_OQHAM, EXAMPLE2_REF_OQHAM, 1e-8),
        ("6.adm", U5_ADM, EXAMPLE2_REF_ADM, 1e-9),
    ],
    ids=["ndham", "oqham", "adm"],
)
def test_c6_example2_columns(key, poly, column, tol):
    with Timer() as clock:
        dev = _max_dev(poly, column)
    ok = dev <= tol and clock.elapsed < 1
    worst = max(zip(EXAMPLE2_GRID, column), key=lambda sv: abs(eval_float(poly, sv[0]) - sv[1]))
    record(key, ok, f"max |series - reference column| = {dev:.3e} (tol {tol:g}); worst at s={worst[0]}:"
                    f" {eval_float(poly, worst[0]):.9f} vs {worst[1]}")
    assert ok


def test_c6_example2_vs_exact_column():
    tol = 1.05e-4
    devs = {name: _max_dev(poly, EXAMPLE2_REF_EXACT) for name, poly in
            (("NDHAM", U5_NDHAM), ("OqHAM", U5_OQHAM), ("ADM", U5_ADM))}
    # the tabulated numeric columns themselves, for comparison
    tabulated = {name: max(abs(a - b) for a, b in zip(col, EXAMPLE2_REF_EXACT)) for name, col in
               (("NDHAM", EXAMPLE2_REF_NDHAM), ("OqHAM", EXAMPLE2_REF_OQHAM), ("ADM", EXAMPLE2_REF_ADM))}
    ok = all(d <= tol for d in devs.values())
    record("6.exact", ok, "max dev from Exact column: "
           + ", ".join(f"{k} {v:.2e}" for k, v in devs.items())
           + f" (tol {tol:g}); tabulated columns: " + ", ".join(f"{k} {v:.2e}" for k, v in tabulated.items()))
    assert ok


# -- 7 ---------------------------------------------------------------------------

@given(exp_polys(), st.integers(1, 4))
@settings(max_examples=200, deadline=None, database=None)
def _prop_cauchy(p, n):
    assert repeated_integral(p, n) == repeated_integral_iterated(p, n)


@given(exp_polys(), st.integers(1, 4))
@settings(max_examples=200, deadline=None, database=None)
def _prop_d_inverts_j(p, n):
    assert differentiate(repeated_integral(p, n), n) == p


@given(exp_polys(max_terms=3), st.integers(1, 3), st.integers(1, 3))
@settings(max_examples=200, deadline=None, database=None)
def _prop_semigroup(p, n, m):
    assert repeated_integral(repeated_integral(p, m), n) == repeated_integral(p, n + m)


@given(st.integers(0, 6), st.integers(1, 6), st.fractions(-3, 3, max_denominator=5))
@settings(max_examples=200, deadline=None, database=None)
def _prop_monomial_law(k, m, a):
    lhs = repeated_integral(shifted_power(k, a), m, a)
    assert lhs == shifted_power(m + k, a).scale(F(factorial(k), factorial(m + k)))


def _brute_power(iterates, r):
    power = {0: ExpPoly.const(1)}
    for _ in range(r):
        nxt = {}
        for i, a in power.items():
            for j, b in enumerate(iterates):
                nxt[i + j] = nxt.get(i + j, ExpPoly.zero()) + a * b
        power = nxt
    return power


@given(st.lists(exp_polys(max_terms=3, max_power=2), min_size=1, max_size=4), st.sampled_from([2, 3]))
@settings(max_examples=200, deadline=None, database=None)
def _prop_convolution(iterates, r):
    power = _brute_power(iterates, r)
    f = PowerNonlinearity.power(r)
    for m in range(len(iterates)):
        assert apply_nonlinearity_coeff(f, iterates, m) == power.get(m, ExpPoly.zero())


@given(small_problems(), st.sampled_from([F(-1), F(1, 2), F(-3, 2)]))
@settings(max_examples=200, deadline=None, database=None)
def _prop_qham_n1(prob, hbar):
    q = run(prob, MethodConfig("QHAM", n_qham=1, hbar=hbar, iterations=3))
    h = run(prob, MethodConfig("HAM", hbar=hbar, iterations=3))
    assert q.iterates == h.iterates and q.weights == h.weights
    assert zero_initial_data_violations(q) == []


def test_c7_property_suites():
    suites = {
        "Cauchy = iterated": _prop_cauchy,
        "D^n J^n = id": _prop_d_inverts_j,
        "J^n J^m = J^(n+m)": _prop_semigroup,
        "J^m (t-a)^k law": _prop_monomial_law,
        "convolution u^2, u^3": _prop_convolution,
        "QHAM(n=1) = HAM": _prop_qham_n1,
    }
    failures = {}
    with Timer() as clock:
        for name, prop in suites.items():
            try:
                prop()
            except AssertionError as exc:
                failures[name] = str(exc).splitlines()[0] if str(exc) else "assertion failed"
    ok = not failures and clock.elapsed < 30
    record("7", ok, f"{len(suites)} suites x 200 cases, failures: {failures or 'none'} ({clock.elapsed:.1f} s)")
    assert ok


# -- 8 ---------------------------------------------------------------------------

def test_c8_zero_initial_data():
    if not RUNS:
        # collected on its own: regenerate the acceptance runs
        example1_defects(10)
        solve(example2_problem(), MethodConfig("NDHAM", iterations=5))
    bad = [(sol.config.label, v) for sol in RUNS for v in zero_initial_data_violations(sol)]
    count = sum(sol.M for sol in RUNS)
    ok = not bad
    record("8", ok, f"{count} iterates from {len(RUNS)} runs checked, violations: {bad or 'none'}")
    assert ok
