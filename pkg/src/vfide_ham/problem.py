"""Problem data for order-``p`` Volterra-Fredholm integro-differential equations.

The equation solved is

    u^(p)(t) + sum_{j=1}^{p-1} a_j(t) u^(j)(t)
        = f(t) + lambda1 int_a^t K1(t,s) F1(u(s)) ds
               + lambda2 int_a^b K2(t,s) F2(u(s)) ds,

    u^(k)(a) = alpha_k,  k = 0..p-1,

with ``f = x_0 + x_1 + ... + x_n`` given as an explicit split. Kernels are
finite sums of separable exp-polynomial products and ``F1``, ``F2`` are
polynomials in ``u``.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence, Tuple

from .algebra import ExpPoly, Scalar, _as_fraction
from .calculus import (
    antiderivative,
    definite_integral,
    differentiate,
    repeated_integral,
    taylor_polynomial,
)


@dataclass(frozen=True)
class SeparableKernel:
    """``K(t, s) = sum_i g_i(t) * h_i(s)``; an empty ``parts`` is the zero kernel."""

    parts: Tuple[Tuple[ExpPoly, ExpPoly], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple((g, h) for g, h in self.parts))

    @classmethod
    def constant(cls, c: Scalar = 1) -> "SeparableKernel":
        return cls(((ExpPoly.const(c), ExpPoly.const(1)),))

    def is_zero(self) -> bool:
        return all(g.is_zero() or h.is_zero() for g, h in self.parts)


@dataclass(frozen=True)
class PowerNonlinearity:
    """``F(u) = sum coeff * u**degree`` with strictly increasing degrees."""

    monomials: Tuple[Tuple[Fraction, int], ...] = ((Fraction(1), 1),)

    def __post_init__(self):
        mons = tuple((_as_fraction(c), int(d)) for c, d in self.monomials)
        degrees = [d for _, d in mons]
        if any(d < 0 for d in degrees):
            raise ValueError("degrees must be nonnegative")
        if any(b <= a for a, b in zip(degrees, degrees[1:])):
            raise ValueError("degrees must be strictly increasing")
        if any(c == 0 for c, _ in mons):
            raise ValueError("coefficients must be nonzero")
        object.__setattr__(self, "monomials", mons)

    @classmethod
    def power(cls, degree: int, coeff: Scalar = 1) -> "PowerNonlinearity":
        return cls(((_as_fraction(coeff), degree),))

    def __call__(self, u: ExpPoly) -> ExpPoly:
        total = ExpPoly.zero()
        for c, d in self.monomials:
            total = total + (u**d).scale(c)
        return total


@dataclass(frozen=True)
class VFIDEProblem:
    p: int
    split: Tuple[ExpPoly, ...]
    alphas: Tuple[Fraction, ...]
    domain: Tuple[Fraction, Fraction] = (Fraction(0), Fraction(1))
    a_coeffs: Tuple[ExpPoly, ...] = ()
    lambda1: Fraction = Fraction(0)
    lambda2: Fraction = Fraction(0)
    kernel1: SeparableKernel = field(default_factory=SeparableKernel)
    kernel2: SeparableKernel = field(default_factory=SeparableKernel)
    f1: PowerNonlinearity = field(default_factory=PowerNonlinearity)
    f2: PowerNonlinearity = field(default_factory=PowerNonlinearity)

    def __post_init__(self):
        set_ = object.__setattr__
        set_(self, "split", tuple(self.split))
        set_(self, "alphas", tuple(_as_fraction(x) for x in self.alphas))
        set_(self, "domain", tuple(_as_fraction(x) for x in self.domain))
        set_(self, "lambda1", _as_fraction(self.lambda1))
        set_(self, "lambda2", _as_fraction(self.lambda2))
        a_coeffs = tuple(self.a_coeffs)
        if not a_coeffs and self.p > 1:
            a_coeffs = (ExpPoly.zero(),) * (self.p - 1)
        set_(self, "a_coeffs", a_coeffs)

        if self.p < 1:
            raise ValueError("order p must be >= 1")
        if len(self.alphas) != self.p:
            raise ValueError(f"need {self.p} initial values, got {len(self.alphas)}")
        if len(self.a_coeffs) != self.p - 1:
            raise ValueError(f"need {self.p - 1} coefficients a_1..a_(p-1), got {len(self.a_coeffs)}")
        if not self.domain[0] < self.domain[1]:
            raise ValueError("domain must satisfy a < b")
        if not self.split:
            raise ValueError("split must contain at least x_0")

    @property
    def a(self) -> Fraction:
        return self.domain[0]

    @property
    def b(self) -> Fraction:
        return self.domain[1]

    @property
    def f(self) -> ExpPoly:
        total = ExpPoly.zero()
        for x in self.split:
            total = total + x
        return total

    def x(self, k: int) -> ExpPoly:
        """Split part ``x_k``; zero past the end of the split."""
        return self.split[k] if 0 <= k < len(self.split) else ExpPoly.zero()

    @property
    def n_split(self) -> int:
        """Index of the last split part."""
        return len(self.split) - 1

    def with_split(self, split: Sequence[ExpPoly]) -> "VFIDEProblem":
        return replace(self, split=tuple(split))


def initial_guess(prob: VFIDEProblem) -> ExpPoly:
    """Taylor polynomial of the initial data plus ``J^p_a x_0``."""
    u0 = taylor_polynomial(prob.alphas, prob.a)
    x0 = prob.x(0)
    if not x0.is_zero():
        u0 = u0 + repeated_integral(x0, prob.p, prob.a)
    return u0


def apply_volterra(kernel: SeparableKernel, integrand: ExpPoly, origin: Scalar = 0) -> ExpPoly:
    """``int_a^t K(t, s) integrand(s) ds``."""
    total = ExpPoly.zero()
    if integrand.is_zero():
        return total
    for g, h in kernel.parts:
        total = total + g * antiderivative(h * integrand, origin)
    return total


def apply_fredholm(kernel: SeparableKernel, integrand: ExpPoly, domain: Tuple[Scalar, Scalar]) -> ExpPoly:
    """``int_a^b K(t, s) integrand(s) ds``; each part contributes ``g(t)`` times a constant."""
    a, b = domain
    total = ExpPoly.zero()
    if integrand.is_zero():
        return total
    for g, h in kernel.parts:
        total = total + g.scale(definite_integral(h * integrand, a, b))
    return total


def _series_power_coeff(iterates: Sequence[ExpPoly], degree: int, m: int) -> ExpPoly:
    # coefficient of q^m in (sum_i u_i q^i)^degree by repeated truncated Cauchy products
    if degree == 0:
        return ExpPoly.const(1) if m == 0 else ExpPoly.zero()
    power = list(iterates[: m + 1])
    for _ in range(degree - 1):
        power = [
            sum((power[i] * iterates[j - i] for i in range(j + 1)), ExpPoly.zero())
            for j in range(m + 1)
        ]
    return power[m]


def apply_nonlinearity_coeff(f: PowerNonlinearity, iterates: Sequence[ExpPoly], m: int) -> ExpPoly:
    """Coefficient of ``q^m`` in ``F(sum_i u_i q^i)``."""
    if len(iterates) < m + 1:
        raise ValueError(f"need at least {m + 1} iterates, got {len(iterates)}")
    total = ExpPoly.zero()
    for c, d in f.monomials:
        total = total + _series_power_coeff(iterates, d, m).scale(c)
    return total


def apply_N_coeff(prob: VFIDEProblem, iterates: Sequence[ExpPoly], m: int) -> ExpPoly:
    """Coefficient of ``q^m`` in ``N[phi(t; q)]`` for ``phi = sum u_i q^i``.

    ``N[u] = u^(p) + sum a_j u^(j) - lambda1 Volterra(F1(u)) - lambda2 Fredholm(F2(u))``.
    """
    if len(iterates) < m + 1:
        raise ValueError(f"need at least {m + 1} iterates, got {len(iterates)}")
    um = iterates[m]
    total = differentiate(um, prob.p)
    for j, aj in enumerate(prob.a_coeffs, start=1):
        if not aj.is_zero():
            total = total + aj * differentiate(um, j)
    if prob.lambda1 != 0 and not prob.kernel1.is_zero():
        inner = apply_nonlinearity_coeff(prob.f1, iterates, m)
        total = total - apply_volterra(prob.kernel1, inner, prob.a).scale(prob.lambda1)
    if prob.lambda2 != 0 and not prob.kernel2.is_zero():
        inner = apply_nonlinearity_coeff(prob.f2, iterates, m)
        total = total - apply_fredholm(prob.kernel2, inner, prob.domain).scale(prob.lambda2)
    return total


def apply_N(prob: VFIDEProblem, u: ExpPoly) -> ExpPoly:
    """The full operator ``N[u]``."""
    return apply_N_coeff(prob, [u], 0)
