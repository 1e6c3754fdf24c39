"""scikit-learn compatible wrapper around :func:`vfide_ham.homotopy.run`.

``fit`` takes a :class:`~vfide_ham.problem.VFIDEProblem` in place of a
design matrix; ``predict`` evaluates the fitted partial sum at sample
points. Because the hyper-parameters are plain constructor arguments,
``clone``, ``get_params`` and ``set_params`` work as usual, for instance
to sweep the convergence-control parameter::

    solver = HomotopySolver(variant="NDHAM", iterations=5)
    for h in (-1, Fraction(-1, 2)):
        solver.set_params(hbar=h).fit(problem).predict(grid)
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_array, check_is_fitted

from .algebra import eval_float
from .diagnostics import residual_norm
from .homotopy import MethodConfig, run
from .problem import VFIDEProblem


class HomotopySolver(BaseEstimator):
    """Semi-analytic series solver.

    Parameters
    ----------
    variant : {"HAM", "MHAM", "mHAM", "QHAM", "NDHAM"}
    hbar : int, Fraction or str
        Convergence-control parameter, nonzero. Read as an exact rational.
    iterations : int
        Number of correction terms ``M``.
    n : int
        Embedding parameter of q-HAM; ignored by the other variants.
    initial_guess : ExpPoly, optional
        Overrides the initial guess built from the data.

    Attributes
    ----------
    solution_ : SeriesSolution
    approximant_ : ExpPoly
        Weighted partial sum of all iterates.
    """

    def __init__(self, variant="NDHAM", hbar=-1, iterations=5, n=1, initial_guess=None):
        self.variant = variant
        self.hbar = hbar
        self.iterations = iterations
        self.n = n
        self.initial_guess = initial_guess

    def _config(self) -> MethodConfig:
        hbar = self.hbar if isinstance(self.hbar, (int, Fraction, str)) else Fraction(self.hbar).limit_denominator()
        return MethodConfig(
            variant=self.variant,
            hbar=Fraction(hbar),
            iterations=int(self.iterations),
            n_qham=int(self.n),
            initial_guess_override=self.initial_guess,
        )

    def fit(self, problem: VFIDEProblem, y=None):
        if not isinstance(problem, VFIDEProblem):
            raise TypeError(f"fit expects a VFIDEProblem, got {type(problem).__name__}")
        self.problem_ = problem
        self.solution_ = run(problem, self._config())
        self.iterates_ = self.solution_.iterates
        self.approximant_ = self.solution_.partial_sum()
        return self

    def predict(self, X):
        """Evaluate the approximant; ``X`` is 1-d or a single-column 2-d array of ``t``."""
        check_is_fitted(self, "approximant_")
        X = np.asarray(X, dtype=float)
        if X.ndim == 1:
            X = X.reshape(-1, 1)
        X = check_array(X, ensure_2d=True)
        if X.shape[1] != 1:
            raise ValueError(f"expected a single column of sample points, got {X.shape[1]}")
        return np.array([eval_float(self.approximant_, t) for t in X[:, 0]])

    def residual(self, grid_size=101) -> float:
        """Max-norm residual of the fitted approximant."""
        check_is_fitted(self, "approximant_")
        return residual_norm(self.problem_, self.approximant_, grid_size)
