"""Homotopy-analysis series solvers for nonlinear Volterra-Fredholm
integro-differential equations, computed in exact exp-polynomial arithmetic."""

from .algebra import (
    ExpConstant,
    ExpPoly,
    NonClosedConstant,
    NotExactlyEvaluable,
    add,
    eval_float,
    eval_rational,
    mul,
    pretty_print,
)
from .calculus import (
    ArityMismatch,
    antiderivative,
    differentiate,
    j_of_d,
    repeated_integral,
)
from .diagnostics import ComparisonTable, GridOutOfDomain, build_table, error_vs_reference, residual_norm
from .homotopy import (
    DivergingIterate,
    MethodConfig,
    SeriesSolution,
    Variant,
    chi,
    partial_sum,
    residual_term,
    run,
    step,
)
from .problem import (
    PowerNonlinearity,
    SeparableKernel,
    VFIDEProblem,
    apply_fredholm,
    apply_N,
    apply_N_coeff,
    apply_nonlinearity_coeff,
    apply_volterra,
    initial_guess,
)

__version__ = "0.1.0"

__all__ = [
    "ArityMismatch",
    "ComparisonTable",
    "DivergingIterate",
    "ExpConstant",
    "ExpPoly",
    "GridOutOfDomain",
    "MethodConfig",
    "NonClosedConstant",
    "NotExactlyEvaluable",
    "PowerNonlinearity",
    "SeparableKernel",
    "SeriesSolution",
    "VFIDEProblem",
    "Variant",
    "add",
    "antiderivative",
    "apply_N",
    "apply_N_coeff",
    "apply_fredholm",
    "apply_nonlinearity_coeff",
    "apply_volterra",
    "build_table",
    "chi",
    "differentiate",
    "error_vs_reference",
    "eval_float",
    "eval_rational",
    "initial_guess",
    "j_of_d",
    "mul",
    "partial_sum",
    "pretty_print",
    "repeated_integral",
    "residual_norm",
    "residual_term",
    "run",
    "step",
]
