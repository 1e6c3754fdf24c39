"""Benchmark problems and stored reference values.

Two model equations are provided:

* :func:`example1_problem` -- ``y'' = e^s - s + int_0^1 s t y(t) dt``,
  ``y(0) = y'(0) = 1``, exact solution ``e^s``.
* :func:`example2_problem` -- ``u' = -1 + int_0^s u(t)^2 dt``, ``u(0) = 0``.

The numeric columns and fifth-order series for the second problem are
reference data: the "exact" column comes from a separate Wavelet-Galerkin
computation and the ADM series from an Adomian decomposition; neither
method is implemented here.
"""
from __future__ import annotations

from fractions import Fraction as F
from typing import Dict, Sequence

from .algebra import ExpPoly
from .problem import PowerNonlinearity, SeparableKernel, VFIDEProblem

T = ExpPoly.monomial(1)
EXP_T = ExpPoly.exp(1)

# x_0 = e^s, x_1 = -s
EXAMPLE1_SPLIT_EXACT = (EXP_T, -T)
# x_0 = 0, x_1 = e^s - 3s/4, x_2 = -s/4
EXAMPLE1_SPLIT_NDHAM = (ExpPoly.zero(), EXP_T - T.scale(F(3, 4)), -T.scale(F(1, 4)))
# phi = x_0 + q x_1 with x_0 = e^s - s/2, x_1 = -s/2
EXAMPLE1_SPLIT_MHAM = (EXP_T - T.scale(F(1, 2)), -T.scale(F(1, 2)))
EXAMPLE1_SPLIT_MHAM_FIFTHS = (EXP_T - T.scale(F(4, 5)), -T.scale(F(1, 5)))
EXAMPLE1_SPLIT_mHAM = (ExpPoly.zero(), EXP_T - T.scale(F(1, 2)), -T.scale(F(1, 2)))
EXAMPLE1_EXACT = EXP_T
EXAMPLE1_SHARED_GUESS = ExpPoly.polynomial([1, 1])


def example1_problem(split: Sequence[ExpPoly] = EXAMPLE1_SPLIT_EXACT) -> VFIDEProblem:
    return VFIDEProblem(
        p=2,
        split=tuple(split),
        alphas=(1, 1),
        domain=(0, 1),
        lambda2=1,
        kernel2=SeparableKernel(((T, T),)),
        f2=PowerNonlinearity.power(1),
    )


def example2_problem(split: Sequence[ExpPoly] = (ExpPoly.const(-1), ExpPoly.zero())) -> VFIDEProblem:
    return VFIDEProblem(
        p=1,
        split=tuple(split),
        alphas=(0,),
        domain=(0, 1),
        lambda1=1,
        kernel1=SeparableKernel.constant(1),
        f1=PowerNonlinearity.power(2),
    )


def _series(coeffs: Dict[int, F]) -> ExpPoly:
    return ExpPoly({(k, 0): c for k, c in coeffs.items()})


# fifth-order sums for example 2
U5_NDHAM = _series({1: F(-1), 4: F(1, 12), 7: F(-1, 252), 10: F(1, 6048), 13: F(-1, 157248), 16: F(37, 158505984)})
U5_OQHAM = _series({1: F(-1), 4: F(1, 24), 7: F(-1, 1008), 10: F(1, 48384), 13: F(-1, 2515968), 16: F(37, 5072191488)})
U5_ADM = _series({1: F(-1), 4: F(1, 12), 7: F(-1, 252), 10: F(1, 6048), 13: F(-1, 157248), 16: F(79, 264176640)})

EXAMPLE2_GRID = (0.0, 0.0938, 0.3125, 0.5, 0.7188, 0.9062, 1.0)
EXAMPLE2_REF_EXACT = (0.0, -0.0937, -0.3117, -0.4948, -0.6969, -0.8520, -0.9205)
EXAMPLE2_REF_NDHAM = (0.0, -0.093793549, -0.311706425, -0.494822508, -0.696941464, -0.851934173, -0.920475703)
EXAMPLE2_REF_OQHAM = (0.0, -0.09379677, -0.31210292, -0.49740330, -0.70776777, -0.86852216, -0.92911909)
EXAMPLE2_REF_ADM = (0.0, -0.093793549, -0.311706425, -0.494822508, -0.696941463, -0.851934160, -0.920475637)

# example 1, defect (approximation - e^s) = c * s^3 with c listed per row m
EXAMPLE1_DEFECTS: Dict[int, Dict[str, F]] = {
    3: {"NDHAM": F(1, 2160), "HAM": F(-1, 1080), "MHAM": F(1, 540), "mHAM": F(1, 540), "QHAM": F(-1, 1080)},
    5: {
        "NDHAM": F(1, 5832 * 10**4),
        "HAM": F(-1, 2916 * 10**4),
        "MHAM": F(1, 1458 * 10**4),
        "mHAM": F(1, 1458 * 10**4),
        "QHAM": F(-1, 2916 * 10**4),
    },
    10: {
        "NDHAM": F(1, 1417176 * 10**9),
        "HAM": F(-1, 708588 * 10**9),
        "MHAM": F(1, 354294 * 10**9),
        "mHAM": F(1, 354294 * 10**9),
        "QHAM": F(-1, 708588 * 10**9),
    },
}
