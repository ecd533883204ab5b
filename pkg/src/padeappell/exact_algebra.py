"""Exact polynomials, truncated power series and rational functions over Q.

Coefficients are :class:`fractions.Fraction` everywhere.  Every object carries
a variable tag (``"x"``, ``"t"``, ``"dx"`` or ``"y"``) so that a polynomial in
``t`` is never silently combined with an operator polynomial in ``dx``.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence

Rational = Fraction

VARIABLE_TAGS = ("x", "t", "dx", "y")


class TagMismatchError(ValueError):
    """Operands live in different variables."""


class NormalizationError(ValueError):
    """A series inverse was requested for a polynomial whose constant term is not 1."""


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to Fraction.

    Floats are refused: silently turning 0.1 into 3602879701896397/2**55 is
    never what a caller in this package wants.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def _strip(coeffs: list[Fraction]) -> tuple[Fraction, ...]:
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        coeffs = [Fraction(0)]
    return tuple(coeffs)


class Poly:
    """Dense univariate polynomial, coefficients in ascending powers."""

    __slots__ = ("coeffs", "tag")

    def __init__(self, coeffs: Iterable = (0,), tag: str = "x"):
        if tag not in VARIABLE_TAGS:
            raise ValueError(f"unknown variable tag {tag!r}")
        object.__setattr__(self, "coeffs", _strip([as_rational(c) for c in coeffs]))
        object.__setattr__(self, "tag", tag)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def monomial(cls, k: int, coeff=1, tag: str = "x") -> "Poly":
        return cls([0] * k + [coeff], tag)

    @classmethod
    def constant(cls, c, tag: str = "x") -> "Poly":
        return cls([c], tag)

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial reports -1."""
        if self.is_zero():
            return -1
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 0

    def coeff(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def _check(self, other: "Poly") -> None:
        if self.tag != other.tag:
            raise TagMismatchError(f"cannot combine {self.tag!r} and {other.tag!r} polynomials")

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        return Poly([other], self.tag)

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self.coeff(k) + other.coeff(k) for k in range(n)], self.tag)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs], self.tag)

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Poly([0], self.tag)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out, self.tag)

    def __rmul__(self, other) -> "Poly":
        return self.scale(other)

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = Poly([1], self.tag)
        for _ in range(k):
            out = out * self
        return out

    def scale(self, c) -> "Poly":
        c = as_rational(c)
        return Poly([c * a for a in self.coeffs], self.tag)

    def derivative(self, times: int = 1) -> "Poly":
        coeffs = list(self.coeffs)
        for _ in range(times):
            coeffs = [k * coeffs[k] for k in range(1, len(coeffs))]
            if not coeffs:
                break
        return Poly(coeffs or [0], self.tag)

    def shift_up(self, k: int = 1) -> "Poly":
        """Multiply by the variable ``k`` times."""
        if self.is_zero():
            return self
        return Poly([0] * k + list(self.coeffs), self.tag)

    def truncate(self, order: int) -> "Poly":
        return Poly(self.coeffs[: order + 1], self.tag)

    def __call__(self, at) -> Fraction:
        return eval_exact(self, at)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.tag == other.tag and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return len(self.coeffs) == 1 and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.coeffs, self.tag))

    def __repr__(self) -> str:
        return f"Poly({[str(c) for c in self.coeffs]}, tag={self.tag!r})"

    def __str__(self) -> str:
        var = {"dx": "D"}.get(self.tag, self.tag)
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            if k == 0:
                body = str(abs(c))
            else:
                mag = "" if abs(c) == 1 else f"{abs(c)}*"
                body = mag + (var if k == 1 else f"{var}^{k}")
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        if not terms:
            return "0"
        head_sign, head = terms[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def poly_add(p: Poly, q: Poly) -> Poly:
    return p + q


def poly_mul(p: Poly, q: Poly) -> Poly:
    return p * q


def poly_scale(p: Poly, c) -> Poly:
    return p.scale(c)


def poly_derivative(p: Poly, times: int = 1) -> Poly:
    return p.derivative(times)


def eval_exact(p: Poly, at) -> Fraction:
    """Horner evaluation in exact arithmetic."""
    at = as_rational(at)
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * at + c
    return acc


class PowerSeries:
    """Truncated power series ``c_0 + c_1 t + ... + c_order t^order``.

    ``order`` is the highest power whose coefficient is known; nothing is
    assumed about higher powers.
    """

    __slots__ = ("coeffs", "tag")

    def __init__(self, coeffs: Sequence, tag: str = "t"):
        coeffs = tuple(as_rational(c) for c in coeffs)
        if not coeffs:
            raise ValueError("a power series needs at least the constant coefficient")
        if tag not in VARIABLE_TAGS:
            raise ValueError(f"unknown variable tag {tag!r}")
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "tag", tag)

    def __setattr__(self, name, value):
        raise AttributeError("PowerSeries is immutable")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k):
        return self.coeffs[k]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, PowerSeries):
            return self.coeffs == other.coeffs and self.tag == other.tag
        if isinstance(other, (list, tuple)):
            return list(self.coeffs) == [as_rational(c) for c in other]
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.coeffs, self.tag))

    def __repr__(self) -> str:
        return f"PowerSeries({[str(c) for c in self.coeffs]}, tag={self.tag!r})"

    def truncate(self, order: int) -> "PowerSeries":
        if order > self.order:
            raise ValueError(f"series known only through order {self.order}")
        return PowerSeries(self.coeffs[: order + 1], self.tag)

    def to_poly(self) -> Poly:
        return Poly(self.coeffs, self.tag)

    def __mul__(self, other: "PowerSeries") -> "PowerSeries":
        if self.tag != other.tag:
            raise TagMismatchError(f"cannot combine {self.tag!r} and {other.tag!r} series")
        order = min(self.order, other.order)
        out = [
            sum((self.coeffs[j] * other.coeffs[k - j] for j in range(k + 1)), Fraction(0))
            for k in range(order + 1)
        ]
        return PowerSeries(out, self.tag)


def _check_order(order: int) -> None:
    if order < 0:
        raise ValueError(f"truncation order must be non-negative, got {order}")


def series_of_poly(p: Poly, order: int) -> PowerSeries:
    _check_order(order)
    return PowerSeries([p.coeff(k) for k in range(order + 1)], p.tag)


def series_invert(q, order: int) -> PowerSeries:
    """Coefficients ``0..order`` of ``1/q`` for ``q(0) == 1``."""
    _check_order(order)
    if isinstance(q, PowerSeries):
        qc, tag = q.coeffs, q.tag
    else:
        qc, tag = q.coeffs, q.tag
    if qc[0] != 1:
        raise NormalizationError(f"series inversion needs constant term 1, got {qc[0]}")
    out = [Fraction(1)]
    for k in range(1, order + 1):
        acc = Fraction(0)
        for j in range(1, min(k, len(qc) - 1) + 1):
            acc += qc[j] * out[k - j]
        out.append(-acc)
    return PowerSeries(out, tag)


def series_divide(num: PowerSeries, den: PowerSeries) -> PowerSeries:
    """Exact quotient of two series; ``den`` must have a non-zero constant term."""
    if num.tag != den.tag:
        raise TagMismatchError("series tags differ")
    order = min(num.order, den.order)
    d0 = den.coeffs[0]
    if d0 == 0:
        raise ZeroDivisionError("denominator series has zero constant term")
    out: list[Fraction] = []
    for k in range(order + 1):
        acc = num.coeffs[k]
        for j in range(1, k + 1):
            acc -= den.coeffs[j] * out[k - j]
        out.append(acc / d0)
    return PowerSeries(out, num.tag)


def series_substitute(s: PowerSeries, scale, power: int) -> PowerSeries:
    """Series of ``s(scale * t**power)``; order grows to ``s.order * power``."""
    if power < 1:
        raise ValueError("substitution power must be >= 1")
    scale = as_rational(scale)
    out = [Fraction(0)] * (s.order * power + 1)
    sk = Fraction(1)
    for k, c in enumerate(s.coeffs):
        out[k * power] = sk * c
        sk *= scale
    return PowerSeries(out, s.tag)


def poly_substitute(p: Poly, scale, power: int) -> Poly:
    """``p(scale * v**power)`` as a polynomial in the same tag."""
    return series_substitute(PowerSeries(p.coeffs, p.tag), scale, power).to_poly()


class RationalFunction:
    """``numerator / denominator`` with the denominator normalised to ``Q(0) == 1``."""

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: Poly, denominator: Poly | None = None):
        if denominator is None:
            denominator = Poly([1], numerator.tag)
        if numerator.tag != denominator.tag:
            raise TagMismatchError("numerator and denominator tags differ")
        if denominator.is_zero():
            raise ZeroDivisionError("zero denominator")
        b0 = denominator.coeff(0)
        if b0 == 0:
            raise NormalizationError("denominator must have a non-zero constant term")
        if b0 != 1:
            numerator = numerator.scale(1 / b0)
            denominator = denominator.scale(1 / b0)
        object.__setattr__(self, "numerator", numerator)
        object.__setattr__(self, "denominator", denominator)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @property
    def tag(self) -> str:
        return self.numerator.tag

    def series(self, order: int) -> PowerSeries:
        inv = series_invert(self.denominator, order)
        return series_of_poly(self.numerator, order) * inv

    def derivative(self) -> "RationalFunction":
        p, q = self.numerator, self.denominator
        return RationalFunction(p.derivative() * q - p * q.derivative(), q * q)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.numerator * other.numerator, self.denominator * other.denominator)

    def __call__(self, at) -> Fraction:
        d = eval_exact(self.denominator, at)
        if d == 0:
            raise ZeroDivisionError(f"pole at {at}")
        return eval_exact(self.numerator, at) / d

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalFunction):
            return NotImplemented
        # cross-multiplied, so unreduced representations still compare equal
        return self.numerator * other.denominator == other.numerator * self.denominator

    def __hash__(self) -> int:
        return hash(self.tag)

    def same_form(self, other: "RationalFunction") -> bool:
        """Coefficient-wise identity of both numerator and denominator."""
        return self.numerator == other.numerator and self.denominator == other.denominator

    def __repr__(self) -> str:
        return f"RationalFunction(({self.numerator}) / ({self.denominator}))"
