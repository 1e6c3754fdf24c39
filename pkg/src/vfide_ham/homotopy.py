"""Homotopy-analysis iteration schemes.

Every scheme uses the linear operator ``L = D^p`` with auxiliary function
``H(t) = 1`` and produces iterates with zero initial data for ``m >= 1``.
Applying ``J^p_a`` to the m-th order deformation equation
``L[u_m - chi_m u_{m-1}] = hbar R_m`` gives the update

    u_m = chi_m * J^p[D^p u_{m-1}] + hbar * J^p[R_m].

The schemes differ in ``chi_m``, in the right-hand side subtracted inside
``R_m`` and in the summation weights.
"""
from __future__ import annotations

import enum
import logging
import math
import warnings
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .algebra import ExpPoly, Scalar, _as_fraction
from .calculus import j_of_d, repeated_integral, taylor_data
from .problem import VFIDEProblem, apply_N_coeff, initial_guess

logger = logging.getLogger(__name__)


class Variant(str, enum.Enum):
    HAM = "HAM"
    MHAM = "MHAM"  # subtracts phi(t, q) = x_0 + q x_1 + ... + q^n x_n
    mHAM = "mHAM"  # staged: L[u_0] = x_0, L[u_m - u_{m-1}] = hbar (R_m - x_m)
    QHAM = "QHAM"  # chi_m = n, weights (1/n)^m
    NDHAM = "NDHAM"  # subtracts g(t; q) built from the split

    @classmethod
    def parse(cls, name: str) -> "Variant":
        key = name.strip().replace("-", "").replace("_", "")
        for v in cls:
            if v.value == key:
                return v
        for v in cls:
            if v.value.upper() == key.upper() and v is not cls.mHAM:
                return v
        raise ValueError(f"unknown variant {name!r}; expected one of {[v.value for v in cls]}")


class DivergingIterate(RuntimeWarning):
    """An iterate has a coefficient beyond the configured magnitude bound."""


@dataclass(frozen=True)
class MethodConfig:
    variant: Variant
    hbar: Fraction = Fraction(-1)
    iterations: int = 5
    n_qham: int = 1
    initial_guess_override: Optional[ExpPoly] = None
    label: Optional[str] = None
    divergence_bound: float = 1e300
    # per-method decomposition of f; must add up to the problem's own f
    split_override: Optional[Tuple[ExpPoly, ...]] = None

    def __post_init__(self):
        if not isinstance(self.variant, Variant):
            object.__setattr__(self, "variant", Variant.parse(self.variant))
        object.__setattr__(self, "hbar", _as_fraction(self.hbar))
        if self.hbar == 0:
            raise ValueError("hbar must be nonzero")
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")
        if self.n_qham < 1:
            raise ValueError("n must be >= 1")
        if self.label is None:
            object.__setattr__(self, "label", self.variant.value)
        if self.split_override is not None:
            split = tuple(self.split_override)
            if not split:
                raise ValueError("split_override needs at least one part")
            object.__setattr__(self, "split_override", split)

    def with_(self, **changes) -> "MethodConfig":
        return replace(self, **changes)


@dataclass(frozen=True)
class SeriesSolution:
    iterates: Tuple[ExpPoly, ...]
    weights: Tuple[Fraction, ...]
    config: MethodConfig
    problem: VFIDEProblem
    diagnostics: Tuple[str, ...] = field(default=())

    @property
    def M(self) -> int:
        return len(self.iterates) - 1

    @property
    def diverged(self) -> bool:
        return bool(self.diagnostics)

    def partial_sum(self, m: Optional[int] = None) -> ExpPoly:
        return partial_sum(self, self.M if m is None else m)

    def reweighted(self, weights: Sequence[Scalar]) -> "SeriesSolution":
        """Same iterates summed with different weights."""
        if len(weights) != len(self.iterates):
            raise ValueError("one weight per iterate required")
        return replace(self, weights=tuple(_as_fraction(w) for w in weights))


def chi(m: int, variant: Variant, n_qham: int = 1) -> Fraction:
    if m < 1:
        raise ValueError("m must be >= 1")
    if m == 1:
        return Fraction(0)
    return Fraction(n_qham) if variant is Variant.QHAM else Fraction(1)


def summation_weights(config: MethodConfig, M: int) -> Tuple[Fraction, ...]:
    if config.variant is Variant.QHAM:
        return tuple(Fraction(1, config.n_qham**m) for m in range(M + 1))
    return (Fraction(1),) * (M + 1)


def residual_term(prob: VFIDEProblem, config: MethodConfig, iterates: Sequence[ExpPoly], m: int) -> ExpPoly:
    """``R_m`` from ``u_0 .. u_{m-1}`` for the configured scheme."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if len(iterates) != m:
        raise ValueError(f"R_{m} needs exactly {m} iterates, got {len(iterates)}")
    prob = resolve_problem(prob, config)
    r = apply_N_coeff(prob, iterates, m - 1)
    v = config.variant
    n = prob.n_split
    if v in (Variant.HAM, Variant.QHAM):
        if m == 1:
            r = r - prob.f
    elif v is Variant.MHAM:
        if m - 1 <= n:
            r = r - prob.x(m - 1)
    elif v is Variant.mHAM:
        if m <= n:
            r = r - prob.x(m)
    elif v is Variant.NDHAM:
        if m == 1:
            r = r - prob.x(0) - prob.x(1)
        elif m <= n:
            # split part x_m enters u_m as -hbar^(m-1) J^p x_m; the factor
            # hbar applied by step() is divided out here
            r = r - prob.x(m).scale(config.hbar ** (m - 2))
    return r


def step(prob: VFIDEProblem, config: MethodConfig, iterates: Sequence[ExpPoly], m: int) -> ExpPoly:
    """Solve the m-th order deformation equation for ``u_m``."""
    rm = residual_term(prob, config, iterates, m)
    um = repeated_integral(rm, prob.p, prob.a).scale(config.hbar) if not rm.is_zero() else ExpPoly.zero()
    prev = iterates[m - 1]
    if config.variant is Variant.mHAM and m == 1:
        coupling = Fraction(1)
    else:
        coupling = chi(m, config.variant, config.n_qham)
    if coupling and not prev.is_zero():
        data = taylor_data(prev, prob.p, prob.a) if m == 1 else [Fraction(0)] * prob.p
        um = um + j_of_d(prev, prob.p, data, prob.a).scale(coupling)
    return um


def _magnitude_log10(c: Fraction) -> float:
    if c == 0:
        return -math.inf
    return math.log10(abs(c.numerator)) - math.log10(c.denominator)


def resolve_problem(prob: VFIDEProblem, config: MethodConfig) -> VFIDEProblem:
    """Apply the method's own split of ``f``, if any."""
    if config.split_override is None:
        return prob
    other = prob.with_split(config.split_override)
    if other.f != prob.f:
        raise ValueError(f"{config.label}: split parts add up to {other.f}, not to f = {prob.f}")
    return other


def run(prob: VFIDEProblem, config: MethodConfig) -> SeriesSolution:
    """Compute ``u_0 .. u_M`` for ``config``."""
    prob = resolve_problem(prob, config)
    u0 = config.initial_guess_override if config.initial_guess_override is not None else initial_guess(prob)
    iterates: List[ExpPoly] = [u0]
    diagnostics: List[str] = []
    bound_log = math.log10(config.divergence_bound)
    for m in range(1, config.iterations + 1):
        um = step(prob, config, iterates, m)
        iterates.append(um)
        mag = _magnitude_log10(um.max_abs_coeff())
        if mag > bound_log:
            msg = f"{config.label}: u[{m}] has a coefficient of magnitude ~1e{mag:.0f}"
            diagnostics.append(msg)
            warnings.warn(msg, DivergingIterate, stacklevel=2)
        logger.debug("%s u[%d] has %d terms", config.label, m, len(um))
    return SeriesSolution(
        iterates=tuple(iterates),
        weights=summation_weights(config, config.iterations),
        config=config,
        problem=prob,
        diagnostics=tuple(diagnostics),
    )


def partial_sum(sol: SeriesSolution, m: int) -> ExpPoly:
    """``sum_{i <= m} w_i u_i``."""
    if not 0 <= m <= sol.M:
        raise ValueError(f"m must lie in [0, {sol.M}]")
    total = ExpPoly.zero()
    for w, u in zip(sol.weights[: m + 1], sol.iterates[: m + 1]):
        total = total + u.scale(w)
    return total


def zero_initial_data_violations(sol: SeriesSolution) -> List[Tuple[int, int]]:
    """``(m, k)`` pairs with ``u_m^(k)(a) != 0`` for ``m >= 1``, ``k < p``."""
    bad = []
    for m, u in enumerate(sol.iterates[1:], start=1):
        for k, v in enumerate(taylor_data(u, sol.problem.p, sol.problem.a)):
            if v != 0:
                bad.append((m, k))
    return bad
