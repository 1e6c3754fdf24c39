"""Line-oriented run configuration.

Example::

    [problem]
    p = 2
    a = 0
    b = 1
    alphas = 1, 1
    lambda2 = 1
    kernel2 = t*s
    F2 = u
    split = exp(t); -t

    [method.ndham]
    variant = NDHAM
    hbar = -1
    iterations = 5

    [output]
    grid = 0, 0.5, 1
    exact = exp(t)

Numbers are read as exact rationals (``1/3``, ``-2``, ``0.25``). Functions
are comma-separated term lists, each term a product of an optional rational
coefficient, ``t^k`` and ``exp(r*t)``; ``s`` is accepted as a synonym of
``t``. A kernel is a semicolon-separated list of separable parts, written
either ``g|h`` (two term lists) or as a single product such as ``2*t*s``.

A method section may carry its own ``split``, which replaces the problem's
decomposition of ``f`` for that method only; its parts must add up to the
same ``f``. The ``[output]`` key ``reference`` gives one reference value per
grid point and takes precedence over ``exact`` in the CSV table.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .algebra import ExpPoly
from .homotopy import MethodConfig, Variant
from .problem import PowerNonlinearity, SeparableKernel, VFIDEProblem

PROBLEM_KEYS = {"p", "a", "b", "alphas", "lambda1", "lambda2", "kernel1", "kernel2", "F1", "F2", "split"}
METHOD_KEYS = {"variant", "hbar", "n", "iterations", "initial_guess", "split"}
OUTPUT_KEYS = {"grid", "csv", "expressions", "exact", "residual_grid", "reference"}
_A_COEFF = re.compile(r"a_coeff\.(\d+)$")
_POWER = re.compile(r"^([ts])(?:\^(\d+))?$")
_EXP = re.compile(r"^exp\((.*)\)$")
_RATE = re.compile(r"^([+-]?)(\d*)\*?([ts])$")
_U = re.compile(r"^u(?:\^(\d+))?$")


class ConfigError(ValueError):
    def __init__(self, reason: str, line: Optional[int] = None):
        self.reason = reason
        self.line = line
        super().__init__(f"line {line}: {reason}" if line is not None else reason)


@dataclass(frozen=True)
class OutputSpec:
    expressions: bool = True
    exact: Optional[ExpPoly] = None
    grid: Tuple[float, ...] = ()
    csv: Optional[str] = None
    residual_grid: Optional[int] = None
    reference: Optional[Tuple[float, ...]] = None


@dataclass(frozen=True)
class RunSpec:
    problem: VFIDEProblem
    methods: Tuple[MethodConfig, ...]
    output: OutputSpec = field(default_factory=OutputSpec)

    def select(self, labels) -> "RunSpec":
        missing = set(labels) - {m.label for m in self.methods}
        if missing:
            raise ConfigError(f"unknown method label(s): {', '.join(sorted(missing))}")
        chosen = tuple(m for m in self.methods if m.label in set(labels))
        return RunSpec(self.problem, chosen, self.output)


# -- value parsers -----------------------------------------------------------

def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not a rational number: {text.strip()!r}") from None


def _split_factors(text: str) -> List[str]:
    factors, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "*" and depth == 0:
            factors.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    factors.append("".join(cur))
    return [f.strip() for f in factors]


def _parse_rate(inner: str) -> Tuple[str, int]:
    inner = inner.replace(" ", "")
    m = _RATE.match(inner)
    if not m:
        raise ValueError(f"exponent must look like r*t, got {inner!r}")
    sign, digits, var = m.groups()
    rate = int(digits) if digits else 1
    return var, -rate if sign == "-" else rate


def _parse_product(text: str) -> Tuple[Fraction, Dict[str, int], Dict[str, int]]:
    """One product term -> (coefficient, power per variable, rate per variable)."""
    text = text.strip()
    coeff = Fraction(1)
    while text[:1] in ("+", "-") and not text[1:2].isdigit():
        if text[0] == "-":
            coeff = -coeff
        text = text[1:].strip()
    if not text:
        raise ValueError("empty term")
    powers: Dict[str, int] = {}
    rates: Dict[str, int] = {}
    for factor in _split_factors(text):
        if not factor:
            raise ValueError(f"empty factor in {text!r}")
        pm = _POWER.match(factor)
        em = _EXP.match(factor)
        if pm:
            var = pm.group(1)
            powers[var] = powers.get(var, 0) + int(pm.group(2) or 1)
        elif em:
            var, rate = _parse_rate(em.group(1))
            rates[var] = rates.get(var, 0) + rate
        else:
            coeff *= parse_rational(factor)
    return coeff, powers, rates


def parse_terms(text: str) -> ExpPoly:
    """Comma-separated term list -> :class:`ExpPoly` (``t`` and ``s`` are one variable)."""
    total = {}
    for piece in text.split(","):
        coeff, powers, rates = _parse_product(piece)
        key = (sum(powers.values()), sum(rates.values()))
        total[key] = total.get(key, Fraction(0)) + coeff
    return ExpPoly(total)


def parse_kernel(text: str) -> SeparableKernel:
    parts = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        if "|" in part:
            g_text, h_text = part.split("|", 1)
            parts.append((parse_terms(g_text), parse_terms(h_text)))
        else:
            coeff, powers, rates = _parse_product(part)
            g = ExpPoly({(powers.get("t", 0), rates.get("t", 0)): coeff})
            h = ExpPoly({(powers.get("s", 0), rates.get("s", 0)): 1})
            parts.append((g, h))
    return SeparableKernel(tuple(parts))


def parse_nonlinearity(text: str) -> PowerNonlinearity:
    monos: Dict[int, Fraction] = {}
    for piece in text.split(","):
        piece = piece.strip()
        coeff, degree = Fraction(1), 0
        while piece[:1] in ("+", "-") and not piece[1:2].isdigit():
            coeff = -coeff if piece[0] == "-" else coeff
            piece = piece[1:].strip()
        for factor in _split_factors(piece):
            um = _U.match(factor)
            if um:
                degree += int(um.group(1) or 1)
            else:
                coeff *= parse_rational(factor)
        monos[degree] = monos.get(degree, Fraction(0)) + coeff
    return PowerNonlinearity(tuple((c, d) for d, c in sorted(monos.items()) if c != 0))


def _parse_bool(text: str) -> bool:
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text.strip()!r}")


def _parse_floats(text: str) -> Tuple[float, ...]:
    return tuple(float(x) for x in text.split(",") if x.strip())


# -- file parser ---------------------------------------------------------------

def _read_sections(text: str):
    sections: List[Tuple[str, int, Dict[str, Tuple[str, int]]]] = []
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1].strip()
            if name not in ("problem", "output") and not name.startswith("method."):
                raise ConfigError(f"unknown section [{name}]", lineno)
            if any(s[0] == name for s in sections):
                raise ConfigError(f"duplicate section [{name}]", lineno)
            current = {}
            sections.append((name, lineno, current))
            continue
        if "=" not in line:
            raise ConfigError("expected 'key = value'", lineno)
        if current is None:
            raise ConfigError("key outside of any section", lineno)
        key, value = (s.strip() for s in line.split("=", 1))
        if key in current:
            raise ConfigError(f"duplicate key {key!r}", lineno)
        current[key] = (value, lineno)
    return sections


def _field(entries, key, parser, section_line, required=False, default=None):
    if key not in entries:
        if required:
            raise ConfigError(f"missing required key {key!r}", section_line)
        return default
    value, lineno = entries[key]
    try:
        return parser(value)
    except ConfigError:
        raise
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"{key}: {exc}", lineno) from None


def _parse_problem(entries, line) -> VFIDEProblem:
    for key, (_, lineno) in entries.items():
        if key not in PROBLEM_KEYS and not _A_COEFF.match(key):
            raise ConfigError(f"unknown key {key!r} in [problem]", lineno)
    p = _field(entries, "p", int, line, required=True)
    alphas = _field(entries, "alphas", lambda v: tuple(parse_rational(x) for x in v.split(",")), line, required=True)
    if len(alphas) != p:
        raise ConfigError(f"alphas has {len(alphas)} values but p = {p}", entries["alphas"][1])
    a = _field(entries, "a", parse_rational, line, default=Fraction(0))
    b = _field(entries, "b", parse_rational, line, default=Fraction(1))
    split = _field(entries, "split", _parse_split, line, required=True)
    a_coeffs = [ExpPoly.zero()] * max(p - 1, 0)
    for key, (value, lineno) in entries.items():
        m = _A_COEFF.match(key)
        if m:
            j = int(m.group(1))
            if not 1 <= j <= p - 1:
                raise ConfigError(f"{key}: index must lie in 1..{p - 1}", lineno)
            a_coeffs[j - 1] = _field(entries, key, parse_terms, line)
    kwargs = dict(
        lambda1=_field(entries, "lambda1", parse_rational, line, default=Fraction(0)),
        lambda2=_field(entries, "lambda2", parse_rational, line, default=Fraction(0)),
        kernel1=_field(entries, "kernel1", parse_kernel, line, default=SeparableKernel()),
        kernel2=_field(entries, "kernel2", parse_kernel, line, default=SeparableKernel()),
        f1=_field(entries, "F1", parse_nonlinearity, line, default=PowerNonlinearity()),
        f2=_field(entries, "F2", parse_nonlinearity, line, default=PowerNonlinearity()),
    )
    try:
        return VFIDEProblem(p=p, split=split, alphas=alphas, domain=(a, b), a_coeffs=tuple(a_coeffs), **kwargs)
    except ValueError as exc:
        raise ConfigError(str(exc), line) from None


def _parse_split(text: str) -> Tuple[ExpPoly, ...]:
    return tuple(parse_terms(x) for x in text.split(";"))


def _parse_method(label, entries, line, problem) -> MethodConfig:
    for key, (_, lineno) in entries.items():
        if key not in METHOD_KEYS:
            raise ConfigError(f"unknown key {key!r} in [method.{label}]", lineno)
    variant = _field(entries, "variant", Variant.parse, line, required=True)
    hbar = _field(entries, "hbar", parse_rational, line, default=Fraction(-1))
    if hbar == 0:
        raise ConfigError("hbar must be nonzero", entries["hbar"][1])
    n = _field(entries, "n", int, line, default=1)
    iterations = _field(entries, "iterations", int, line, default=5)
    guess = _field(entries, "initial_guess", parse_terms, line)
    split = _field(entries, "split", _parse_split, line)
    if split is not None and problem.with_split(split).f != problem.f:
        raise ConfigError("method split must add up to the problem's f", entries["split"][1])
    try:
        return MethodConfig(
            variant=variant, hbar=hbar, iterations=iterations, n_qham=n,
            initial_guess_override=guess, label=label, split_override=split,
        )
    except ValueError as exc:
        raise ConfigError(str(exc), line) from None


def _parse_output(entries, line, problem) -> OutputSpec:
    for key, (_, lineno) in entries.items():
        if key not in OUTPUT_KEYS:
            raise ConfigError(f"unknown key {key!r} in [output]", lineno)
    grid = _field(entries, "grid", _parse_floats, line, default=())
    if grid:
        lineno = entries["grid"][1]
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ConfigError("grid must be strictly increasing", lineno)
        if grid[0] < float(problem.a) or grid[-1] > float(problem.b):
            raise ConfigError("grid leaves the problem domain", lineno)
    reference = _field(entries, "reference", _parse_floats, line)
    if reference is not None and len(reference) != len(grid):
        raise ConfigError("reference needs one value per grid point", entries["reference"][1])
    residual_grid = _field(entries, "residual_grid", int, line)
    if residual_grid is not None and residual_grid < 2:
        raise ConfigError("residual_grid must be >= 2", entries["residual_grid"][1])
    return OutputSpec(
        expressions=_field(entries, "expressions", _parse_bool, line, default=True),
        exact=_field(entries, "exact", parse_terms, line),
        grid=grid,
        csv=_field(entries, "csv", str.strip, line),
        residual_grid=residual_grid,
        reference=reference,
    )


def parse_config(text: str) -> RunSpec:
    sections = _read_sections(text)
    by_name = {name: (line, entries) for name, line, entries in sections}
    if "problem" not in by_name:
        raise ConfigError("missing [problem] section")
    problem = _parse_problem(by_name["problem"][1], by_name["problem"][0])
    methods = []
    for name, line, entries in sections:
        if name.startswith("method."):
            label = name[len("method."):]
            if not label:
                raise ConfigError("method section needs a label", line)
            methods.append(_parse_method(label, entries, line, problem))
    if not methods:
        raise ConfigError("at least one [method.<label>] section is required")
    out_line, out_entries = by_name.get("output", (None, {}))
    output = _parse_output(out_entries, out_line, problem)
    return RunSpec(problem=problem, methods=tuple(methods), output=output)


# -- renderer ----------------------------------------------------------------

def _fr(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def render_terms(p: ExpPoly) -> str:
    if p.is_zero():
        return "0"
    out = []
    for (k, r), c in sorted(p.items()):
        term = _fr(c)
        if k:
            term += f"*t^{k}"
        if r:
            term += f"*exp({r}*t)"
        out.append(term)
    return ", ".join(out)


def _render_kernel(kernel: SeparableKernel) -> str:
    return "; ".join(f"{render_terms(g)} | {render_terms(h)}" for g, h in kernel.parts)


def _render_f(f: PowerNonlinearity) -> str:
    return ", ".join(f"{_fr(c)}*u^{d}" for c, d in f.monomials)


def render_config(spec: RunSpec) -> str:
    """Inverse of :func:`parse_config` up to formatting."""
    prob = spec.problem
    lines = [
        "[problem]",
        f"p = {prob.p}",
        f"a = {_fr(prob.a)}",
        f"b = {_fr(prob.b)}",
        f"alphas = {', '.join(_fr(x) for x in prob.alphas)}",
        f"lambda1 = {_fr(prob.lambda1)}",
        f"lambda2 = {_fr(prob.lambda2)}",
        f"F1 = {_render_f(prob.f1)}",
        f"F2 = {_render_f(prob.f2)}",
        f"split = {'; '.join(render_terms(x) for x in prob.split)}",
    ]
    for name, kernel in (("kernel1", prob.kernel1), ("kernel2", prob.kernel2)):
        if kernel.parts:
            lines.append(f"{name} = {_render_kernel(kernel)}")
    for j, aj in enumerate(prob.a_coeffs, start=1):
        if not aj.is_zero():
            lines.append(f"a_coeff.{j} = {render_terms(aj)}")
    for m in spec.methods:
        lines += [
            "",
            f"[method.{m.label}]",
            f"variant = {m.variant.value}",
            f"hbar = {_fr(m.hbar)}",
            f"n = {m.n_qham}",
            f"iterations = {m.iterations}",
        ]
        if m.initial_guess_override is not None:
            lines.append(f"initial_guess = {render_terms(m.initial_guess_override)}")
        if m.split_override is not None:
            lines.append(f"split = {'; '.join(render_terms(x) for x in m.split_override)}")
    out = spec.output
    lines += ["", "[output]", f"expressions = {'true' if out.expressions else 'false'}"]
    if out.grid:
        lines.append(f"grid = {', '.join(repr(x) for x in out.grid)}")
    if out.reference is not None:
        lines.append(f"reference = {', '.join(repr(x) for x in out.reference)}")
    if out.csv is not None:
        lines.append(f"csv = {out.csv}")
    if out.exact is not None:
        lines.append(f"exact = {render_terms(out.exact)}")
    if out.residual_grid is not None:
        lines.append(f"residual_grid = {out.residual_grid}")
    return "\n".join(lines) + "\n"
