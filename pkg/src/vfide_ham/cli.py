"""Command-line front end: ``vfide-ham CONFIG [--only LABEL] [--check]``.

Exit status is 0 on success, 2 for configuration errors and 3 for solver
errors (non-rational Fredholm constants or diverging iterates).
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import List, Optional, TextIO

from .algebra import NonClosedConstant, pretty_print
from .config import ConfigError, RunSpec, parse_config
from .diagnostics import build_table, residual_norm
from .homotopy import SeriesSolution, run

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SOLVER = 3


def expression_listing(sol: SeriesSolution, exact=None) -> List[str]:
    cfg = sol.config
    lines = [f"# method {cfg.label}: variant={cfg.variant.value} hbar={cfg.hbar} iterations={cfg.iterations}"
             + (f" n={cfg.n_qham}" if cfg.variant.value == "QHAM" else "")]
    for m, u in enumerate(sol.iterates):
        lines.append(f"u[{m}] = {pretty_print(u)}")
    total = sol.partial_sum()
    lines.append(f"sum[{sol.M}] = {pretty_print(total)}")
    if exact is not None:
        lines.append(f"defect[{sol.M}] = {pretty_print(total - exact)}")
    return lines


def execute(spec: RunSpec, out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    """Run every method in ``spec`` and write listings and the CSV table."""
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    o = spec.output
    solutions = []
    status = EXIT_OK
    for cfg in spec.methods:
        try:
            sol = run(spec.problem, cfg)
        except NonClosedConstant as exc:
            print(f"error: method {cfg.label}: {exc}", file=err)
            return EXIT_SOLVER
        for note in sol.diagnostics:
            print(f"error: diverging iterate: {note}", file=err)
            status = EXIT_SOLVER
        solutions.append(sol)
        if o.expressions:
            for line in expression_listing(sol, o.exact):
                print(line, file=out)
        if o.residual_grid:
            try:
                value = residual_norm(spec.problem, sol.partial_sum(), o.residual_grid)
            except NonClosedConstant as exc:
                print(f"error: method {cfg.label}: residual: {exc}", file=err)
                return EXIT_SOLVER
            print(f"residual[{sol.M}] = {value:.6e}", file=out)
    if o.grid:
        reference = o.reference if o.reference is not None else o.exact
        table = build_table(solutions, o.grid, reference)
        text = table.to_csv()
        if o.csv:
            Path(o.csv).write_text(text, encoding="utf-8", newline="\n")
        else:
            out.write(text)
    return status


def main(argv: Optional[List[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="vfide-ham",
        description="Homotopy-analysis series solutions of Volterra-Fredholm integro-differential equations.",
    )
    parser.add_argument("config", help="run configuration file")
    parser.add_argument("--only", action="append", metavar="LABEL", help="run only this method (repeatable)")
    parser.add_argument("--check", action="store_true", help="parse and validate the configuration, then stop")
    args = parser.parse_args(argv)

    try:
        text = Path(args.config).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"error: cannot read {args.config}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        spec = parse_config(text)
        if args.only:
            spec = spec.select(args.only)
    except ConfigError as exc:
        print(f"error: {args.config}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if args.check:
        print(f"ok: {len(spec.methods)} method(s), p = {spec.problem.p}")
        return EXIT_OK
    return execute(spec)


if __name__ == "__main__":
    sys.exit(main())
