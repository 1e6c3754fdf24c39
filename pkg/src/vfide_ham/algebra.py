"""Exact exp-polynomial ring.

An :class:`ExpPoly` is a finite sum ``sum c * t**k * exp(r*t)`` with
``k >= 0``, integer ``r`` and :class:`fractions.Fraction` coefficients.
Every iterate, kernel factor and data function handled by the solver lives
here, so all symbolic work stays exact; floats only appear in
:func:`eval_float`.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Iterator, Mapping, Tuple, Union

Key = Tuple[int, int]  # (power, rate)
Scalar = Union[int, Fraction]


class NotExactlyEvaluable(ValueError):
    """Raised when an exact value would require a transcendental number."""


class ExpConstant:
    """Exact constant ``sum c * exp(x)`` with rational ``c`` and ``x``.

    Used to report definite integrals whose value leaves the rationals.
    """

    __slots__ = ("_parts",)

    def __init__(self, parts: Mapping[Fraction, Fraction]):
        self._parts = {Fraction(x): Fraction(c) for x, c in parts.items() if c != 0}

    @property
    def parts(self) -> Dict[Fraction, Fraction]:
        return dict(self._parts)

    def is_rational(self) -> bool:
        return all(x == 0 for x in self._parts)

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise NotExactlyEvaluable(f"{self} is not rational")
        return self._parts.get(Fraction(0), Fraction(0))

    def __float__(self) -> float:
        return math.fsum(float(c) * math.exp(x) for x, c in self._parts.items())

    def __eq__(self, other):
        if not isinstance(other, ExpConstant):
            return NotImplemented
        return self._parts == other._parts

    def __hash__(self):
        return hash(frozenset(self._parts.items()))

    def __str__(self):
        if not self._parts:
            return "0"
        out = []
        for x in sorted(self._parts):
            c = self._parts[x]
            out.append(f"{_fmt_fraction(c)}" if x == 0 else f"{_fmt_fraction(c)}*e^({x})")
        return " + ".join(out)

    def __repr__(self):
        return f"ExpConstant({self})"


class NonClosedConstant(ArithmeticError):
    """A definite integral produced ``exp(x)`` with ``x != 0``.

    The exact value is attached as :attr:`constant`.
    """

    def __init__(self, constant: ExpConstant, context: str = ""):
        self.constant = constant
        msg = f"integral value {constant} is not rational"
        if context:
            msg = f"{context}: {msg}"
        super().__init__(msg)


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational, str)):
        return Fraction(value)
    raise TypeError(f"exact rational expected, got {type(value).__name__}")


class ExpPoly:
    """Immutable exp-polynomial in canonical form.

    ``terms`` maps ``(power, rate)`` to a nonzero coefficient. Two values are
    equal exactly when they describe the same function.

    >>> t = ExpPoly.monomial(1)
    >>> str((ExpPoly.exp(1) - t) * 2)
    '2*e^t - 2*t'
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Union[Mapping[Key, Scalar], Iterable[Tuple[Key, Scalar]], None] = None):
        collected: Dict[Key, Fraction] = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for (k, r), c in items:
                if int(k) != k or k < 0 or int(r) != r:
                    raise ValueError(f"invalid term key {(k, r)!r}")
                key = (int(k), int(r))
                collected[key] = collected.get(key, Fraction(0)) + _as_fraction(c)
        self._terms = {key: c for key, c in collected.items() if c != 0}
        self._hash = None
        assert all(c != 0 for c in self._terms.values())

    @classmethod
    def _raw(cls, terms: Dict[Key, Fraction]) -> "ExpPoly":
        # trusted fast path: caller guarantees Fraction values and int keys
        obj = cls.__new__(cls)
        obj._terms = {key: c for key, c in terms.items() if c != 0}
        obj._hash = None
        return obj

    # constructors ---------------------------------------------------------
    @classmethod
    def zero(cls) -> "ExpPoly":
        return cls._raw({})

    @classmethod
    def const(cls, c: Scalar) -> "ExpPoly":
        return cls._raw({(0, 0): _as_fraction(c)})

    @classmethod
    def monomial(cls, power: int = 1, coeff: Scalar = 1, rate: int = 0) -> "ExpPoly":
        return cls({(power, rate): coeff})

    @classmethod
    def exp(cls, rate: int = 1, coeff: Scalar = 1) -> "ExpPoly":
        return cls({(0, rate): coeff})

    @classmethod
    def polynomial(cls, coeffs: Iterable[Scalar]) -> "ExpPoly":
        """Build ``sum coeffs[k] * t**k``."""
        return cls({(k, 0): c for k, c in enumerate(coeffs)})

    # accessors ------------------------------------------------------------
    @property
    def terms(self) -> Dict[Key, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Key, Fraction]]:
        return iter(self._terms.items())

    def coeff(self, power: int, rate: int = 0) -> Fraction:
        return self._terms.get((power, rate), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_polynomial(self) -> bool:
        return all(r == 0 for _, r in self._terms)

    def degree(self) -> int:
        """Largest power of ``t`` present (``-1`` for the zero function)."""
        return max((k for k, _ in self._terms), default=-1)

    def rates(self) -> set:
        return {r for _, r in self._terms}

    def max_abs_coeff(self) -> Fraction:
        return max((abs(c) for c in self._terms.values()), default=Fraction(0))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    # arithmetic -----------------------------------------------------------
    def _coerce(self, other) -> "ExpPoly":
        if isinstance(other, ExpPoly):
            return other
        if isinstance(other, (int, Fraction, Rational)):
            return ExpPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for key, c in other._terms.items():
            out[key] = out.get(key, Fraction(0)) + c
        return ExpPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return ExpPoly._raw({key: -c for key, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def scale(self, c: Scalar) -> "ExpPoly":
        c = _as_fraction(c)
        if c == 0:
            return ExpPoly.zero()
        return ExpPoly._raw({key: v * c for key, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Rational)) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, ExpPoly):
            return NotImplemented
        out: Dict[Key, Fraction] = {}
        for (k1, r1), c1 in self._terms.items():
            for (k2, r2), c2 in other._terms.items():
                key = (k1 + k2, r1 + r2)
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return ExpPoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers are supported")
        result = ExpPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # comparison -----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ExpPoly.const(other)
        if not isinstance(other, ExpPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"ExpPoly({pretty_print(self)!r})"

    def __str__(self):
        return pretty_print(self)

    def __call__(self, t):
        return eval_float(self, t)


def add(lhs: ExpPoly, rhs: ExpPoly) -> ExpPoly:
    return lhs + rhs


def mul(lhs: ExpPoly, rhs: ExpPoly) -> ExpPoly:
    return lhs * rhs


def eval_rational(p: ExpPoly, t: Scalar) -> Fraction:
    """Exact value of ``p`` at rational ``t``.

    Works whenever every exponential factor collapses to 1, i.e. all terms
    are polynomial or ``t == 0``. Otherwise raises :class:`NotExactlyEvaluable`.
    """
    t = _as_fraction(t)
    total = Fraction(0)
    for (k, r), c in p.items():
        if r != 0 and t != 0:
            raise NotExactlyEvaluable(f"exp({r}*t) at t={t} is not rational; use eval_float")
        total += c * t**k
    return total


def eval_float(p: ExpPoly, t: float) -> float:
    """Floating value of ``p`` at ``t``; terms accumulated smallest coefficient first."""
    t = float(t)
    if not math.isfinite(t):
        raise ValueError("t must be finite")
    ordered = sorted(p.items(), key=lambda item: abs(item[1]))
    return math.fsum(float(c) * t**k * math.exp(r * t) for (k, r), c in ordered)


def _fmt_fraction(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _fmt_factor(k: int, r: int) -> str:
    parts = []
    if k == 1:
        parts.append("t")
    elif k > 1:
        parts.append(f"t^{k}")
    if r == 1:
        parts.append("e^t")
    elif r != 0:
        parts.append(f"e^({r}*t)")
    return "*".join(parts)


def print_order(key: Key):
    """Sort key for rendering: exponentials by falling rate, then rising power."""
    k, r = key
    return (-r, k)


def pretty_print(p: ExpPoly) -> str:
    """Deterministic rendering such as ``e^t - 1 - t - (1/36)*t^3``."""
    if p.is_zero():
        return "0"
    pieces = []
    for key in sorted(p.terms, key=print_order):
        c = p.coeff(*key)
        mag = abs(c)
        factor = _fmt_factor(*key)
        if not factor:
            body = _fmt_fraction(mag)
        elif mag == 1:
            body = factor
        elif mag.denominator == 1:
            body = f"{mag.numerator}*{factor}"
        else:
            body = f"({_fmt_fraction(mag)})*{factor}"
        if not pieces:
            pieces.append(("-" if c < 0 else "") + body)
        else:
            pieces.append((" - " if c < 0 else " + ") + body)
    return "".join(pieces)
