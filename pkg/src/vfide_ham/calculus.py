"""Differential and integral operators on :class:`ExpPoly`.

All integrals start at a fixed origin ``a``. The repeated integral ``J^n_a``
is evaluated through the single-integral Cauchy formula

    J^n_a p(t) = 1/(n-1)! * int_a^t (t - s)**(n-1) p(s) ds

with ``(t - s)**(n-1)`` expanded binomially, so every step is an exact
antiderivative. :func:`repeated_integral_iterated` does the same job by plain
repetition and is kept as an independent cross-check.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb, factorial
from typing import Dict, Sequence

from .algebra import (
    ExpConstant,
    ExpPoly,
    Key,
    NonClosedConstant,
    NotExactlyEvaluable,
    Scalar,
    _as_fraction,
)


class ArityMismatch(ValueError):
    """Wrong number of initial values for the requested order."""


def differentiate(p: ExpPoly, j: int = 1) -> ExpPoly:
    """Exact ``j``-th derivative, term by term.

    ``d/dt [t^k e^{rt}] = k t^{k-1} e^{rt} + r t^k e^{rt}``.
    """
    if j < 0:
        raise ValueError("derivative order must be nonnegative")
    terms = p.terms
    for _ in range(j):
        out: Dict[Key, Fraction] = {}
        for (k, r), c in terms.items():
            if k > 0:
                key = (k - 1, r)
                out[key] = out.get(key, Fraction(0)) + c * k
            if r != 0:
                out[(k, r)] = out.get((k, r), Fraction(0)) + c * r
        terms = {key: c for key, c in out.items() if c != 0}
        if not terms:
            break
    return ExpPoly._raw(terms)


def _primitive_terms(k: int, r: int, c: Fraction) -> Dict[Key, Fraction]:
    """Terms of one primitive of ``c t^k e^{rt}`` (no constant fixed)."""
    if r == 0:
        return {(k + 1, 0): c / (k + 1)}
    # int t^k e^{rt} = e^{rt} sum_j (-1)^j k!/(k-j)! t^{k-j} / r^{j+1}
    out = {}
    falling = 1
    for j in range(k + 1):
        out[(k - j, r)] = c * (-1) ** j * falling / Fraction(r) ** (j + 1)
        falling *= k - j
    return out


def _primitive(p: ExpPoly) -> ExpPoly:
    out: Dict[Key, Fraction] = {}
    for (k, r), c in p.items():
        for key, v in _primitive_terms(k, r, c).items():
            out[key] = out.get(key, Fraction(0)) + v
    return ExpPoly._raw(out)


def _exact_value(p: ExpPoly, x: Fraction) -> ExpConstant:
    """Value of ``p`` at rational ``x`` grouped by the exponent ``r*x``."""
    parts: Dict[Fraction, Fraction] = {}
    for (k, r), c in p.items():
        e = r * x
        parts[e] = parts.get(e, Fraction(0)) + c * x**k
    return ExpConstant(parts)


def antiderivative(p: ExpPoly, origin: Scalar = 0) -> ExpPoly:
    """The primitive ``F`` of ``p`` with ``F(origin) = 0``.

    Raises :class:`NonClosedConstant` when an exponential term would need
    ``exp(r*origin)`` with ``r*origin != 0`` as its integration constant.
    """
    a = _as_fraction(origin)
    prim = _primitive(p)
    at_a = _exact_value(prim, a)
    if not at_a.is_rational():
        raise NonClosedConstant(at_a, "antiderivative constant")
    return prim - at_a.rational_value()


def definite_integral_exact(p: ExpPoly, lower: Scalar, upper: Scalar) -> ExpConstant:
    """``int_lower^upper p`` as an exact :class:`ExpConstant`."""
    lo, hi = _as_fraction(lower), _as_fraction(upper)
    prim = _primitive(p)
    top, bottom = _exact_value(prim, hi), _exact_value(prim, lo)
    parts = top.parts
    for x, c in bottom.parts.items():
        parts[x] = parts.get(x, Fraction(0)) - c
    return ExpConstant(parts)


def definite_integral(p: ExpPoly, lower: Scalar, upper: Scalar) -> Fraction:
    """Rational value of ``int_lower^upper p``, or :class:`NonClosedConstant`."""
    value = definite_integral_exact(p, lower, upper)
    if not value.is_rational():
        raise NonClosedConstant(value, f"integral over [{lower}, {upper}]")
    return value.rational_value()


def shifted_power(k: int, a: Scalar = 0) -> ExpPoly:
    """``(t - a)**k`` expanded in the monomial basis."""
    a = _as_fraction(a)
    return ExpPoly.polynomial(comb(k, i) * (-a) ** (k - i) for i in range(k + 1))


def repeated_integral(p: ExpPoly, n: int, origin: Scalar = 0) -> ExpPoly:
    """``J^n_a p`` via the Cauchy single-integral formula."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if p.is_zero():
        return p
    total = ExpPoly.zero()
    for i in range(n):
        # (t - s)^{n-1} = sum_i C(n-1, i) t^{n-1-i} (-s)^i
        weight = Fraction(comb(n - 1, i) * (-1) ** i, factorial(n - 1))
        inner = antiderivative(ExpPoly.monomial(i) * p, origin)
        total = total + ExpPoly.monomial(n - 1 - i, weight) * inner
    return total


def repeated_integral_iterated(p: ExpPoly, n: int, origin: Scalar = 0) -> ExpPoly:
    """``J^n_a p`` by ``n`` successive antiderivatives."""
    if n < 1:
        raise ValueError("n must be >= 1")
    for _ in range(n):
        p = antiderivative(p, origin)
    return p


def taylor_data(p: ExpPoly, n: int, origin: Scalar = 0) -> list:
    """Exact ``[p(a), p'(a), ..., p^{(n-1)}(a)]``."""
    a = _as_fraction(origin)
    out = []
    d = p
    for _ in range(n):
        value = _exact_value(d, a)
        if not value.is_rational():
            raise NonClosedConstant(value, "initial data")
        out.append(value.rational_value())
        d = differentiate(d)
    return out


def taylor_polynomial(values: Sequence[Scalar], origin: Scalar = 0) -> ExpPoly:
    """``sum values[k]/k! (t - a)^k``."""
    total = ExpPoly.zero()
    for k, v in enumerate(values):
        v = _as_fraction(v)
        if v:
            total = total + shifted_power(k, origin).scale(v / factorial(k))
    return total


def j_of_d(p: ExpPoly, n: int, initial_values: Sequence[Scalar], origin: Scalar = 0) -> ExpPoly:
    """``J^n_a[D^n p] = p - sum_{k<n} p^{(k)}(a)/k! (t - a)^k``.

    ``initial_values`` are the caller's ``p(a), ..., p^{(n-1)}(a)``.
    """
    if len(initial_values) != n:
        raise ArityMismatch(f"expected {n} initial values, got {len(initial_values)}")
    return p - taylor_polynomial(initial_values, origin)


__all__ = [
    "ArityMismatch",
    "NonClosedConstant",
    "NotExactlyEvaluable",
    "antiderivative",
    "definite_integral",
    "definite_integral_exact",
    "differentiate",
    "j_of_d",
    "repeated_integral",
    "repeated_integral_iterated",
    "shifted_power",
    "taylor_data",
    "taylor_polynomial",
]
