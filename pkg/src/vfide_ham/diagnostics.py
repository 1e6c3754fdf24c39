"""Residuals, reference errors and comparison tables."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from .algebra import ExpPoly, eval_float
from .homotopy import SeriesSolution
from .problem import VFIDEProblem, apply_N


class GridOutOfDomain(ValueError):
    """Evaluation grid not strictly increasing or outside ``[a, b]``."""


@dataclass(frozen=True)
class ComparisonTable:
    grid: Tuple[float, ...]
    columns: Tuple[Tuple[str, Tuple[float, ...]], ...]
    reference_label: Optional[str] = None
    reference: Optional[Tuple[float, ...]] = None

    def __post_init__(self):
        n = len(self.grid)
        for label, values in self.columns:
            if len(values) != n:
                raise ValueError(f"column {label!r} has {len(values)} values for {n} grid points")
        if self.reference is not None and len(self.reference) != n:
            raise ValueError("reference column length differs from grid")

    @property
    def labels(self) -> List[str]:
        return [label for label, _ in self.columns]

    def column(self, label: str) -> Tuple[float, ...]:
        if label == self.reference_label and self.reference is not None:
            return self.reference
        for name, values in self.columns:
            if name == label:
                return values
        raise KeyError(label)

    def abs_errors(self, label: str) -> Tuple[float, ...]:
        if self.reference is None:
            raise ValueError("table has no reference column")
        return tuple(abs(v - r) for v, r in zip(self.column(label), self.reference))

    def to_csv(self, digits: int = 9) -> str:
        """CSV text: grid, method columns, then reference and absolute errors."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        header = ["s", *self.labels]
        if self.reference is not None:
            header += [self.reference_label or "reference", *(f"abs_err_{lab}" for lab in self.labels)]
        writer.writerow(header)
        fmt = f".{digits}f"
        for i, s in enumerate(self.grid):
            row = [format(s, fmt), *(format(values[i], fmt) for _, values in self.columns)]
            if self.reference is not None:
                ref = self.reference[i]
                row.append(format(ref, fmt))
                row += [format(abs(values[i] - ref), fmt) for _, values in self.columns]
            writer.writerow(row)
        return buf.getvalue()


def residual_function(prob: VFIDEProblem, approximant: ExpPoly) -> ExpPoly:
    """``N[approximant] - f`` computed symbolically."""
    return apply_N(prob, approximant) - prob.f


def residual_norm(prob: VFIDEProblem, approximant: ExpPoly, grid_size: int = 101) -> float:
    """Max of ``|N[u] - f|`` over a uniform grid on ``[a, b]``."""
    if grid_size < 2:
        raise ValueError("grid_size must be >= 2")
    r = residual_function(prob, approximant)
    grid = np.linspace(float(prob.a), float(prob.b), grid_size)
    return max(abs(eval_float(r, t)) for t in grid)


def error_vs_reference(approximant: ExpPoly, reference: Sequence[Tuple[float, float]]) -> List[float]:
    return [abs(eval_float(approximant, t) - value) for t, value in reference]


def _check_grid(grid: Sequence[float], domain=None) -> None:
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise GridOutOfDomain("grid must be strictly increasing")
    if domain is not None and grid:
        lo, hi = float(domain[0]), float(domain[1])
        if grid[0] < lo or grid[-1] > hi:
            raise GridOutOfDomain(f"grid [{grid[0]}, {grid[-1]}] leaves domain [{lo}, {hi}]")


def build_table(
    runs: Sequence[SeriesSolution],
    grid: Sequence[float],
    reference: Union[None, ExpPoly, Sequence[float]] = None,
    reference_label: str = "reference",
) -> ComparisonTable:
    """One column per run (its final partial sum), in input order."""
    grid = tuple(float(s) for s in grid)
    domains = {run.problem.domain for run in runs}
    if len(domains) > 1:
        raise ValueError("all runs must share the same domain")
    _check_grid(grid, next(iter(domains)) if domains else None)
    columns = []
    for run in runs:
        approx = run.partial_sum()
        columns.append((run.config.label, tuple(eval_float(approx, s) for s in grid)))
    ref = None
    if isinstance(reference, ExpPoly):
        ref = tuple(eval_float(reference, s) for s in grid)
    elif reference is not None:
        ref = tuple(float(v) for v in reference)
    return ComparisonTable(
        grid=grid,
        columns=tuple(columns),
        reference_label=reference_label if ref is not None else None,
        reference=ref,
    )
