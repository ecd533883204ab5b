"""Maclaurin coefficients of the amplitude catalogue and exact [m|n] Padé solving."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, gcd, lcm

from .exact_algebra import (
    Poly,
    PowerSeries,
    RationalFunction,
    as_rational,
    poly_substitute,
    series_divide,
)

AMPLITUDE_KINDS = (
    "exp_neg",
    "exp_neg_half_square",
    "trunc_exp",
    "euler",
    "bernoulli",
    "hermite2",
)
_PARAMETRIC = {"trunc_exp", "hermite2"}


class PadeDefect(ArithmeticError):
    """The [m|n] linear system has no solution with a unit constant denominator."""

    def __init__(self, order: int, m: int, n: int):
        self.order = order
        self.m = m
        self.n = n
        super().__init__(f"defective [{m}|{n}] entry: matching condition at order {order} cannot be satisfied")


@dataclass(frozen=True)
class AmplitudeSpec:
    """One amplitude A(t) of the catalogue; ``y`` is required for the parametric kinds."""

    kind: str
    y: Fraction | None = None

    def __post_init__(self):
        if self.kind not in AMPLITUDE_KINDS:
            raise ValueError(f"unknown amplitude kind {self.kind!r}; expected one of {AMPLITUDE_KINDS}")
        if self.kind in _PARAMETRIC:
            if self.y is None:
                raise ValueError(f"amplitude {self.kind!r} needs parameter y")
            object.__setattr__(self, "y", as_rational(self.y))
        elif self.y is not None:
            raise ValueError(f"amplitude {self.kind!r} takes no parameter")

    @property
    def is_even(self) -> bool:
        return self.kind in ("exp_neg_half_square", "hermite2")


@dataclass(frozen=True)
class PadeApproximant:
    m: int
    n: int
    value: RationalFunction = field(compare=False)

    @property
    def numerator(self) -> Poly:
        return self.value.numerator

    @property
    def denominator(self) -> Poly:
        return self.value.denominator


def _exp_coeffs(order: int, sign: int = 1) -> list[Fraction]:
    return [Fraction(sign**k, factorial(k)) for k in range(order + 1)]


def maclaurin(a: AmplitudeSpec, order: int) -> PowerSeries:
    """Exact coefficients ``c_0 .. c_order`` of the amplitude."""
    if order < 0:
        raise ValueError("order must be >= 0")
    kind = a.kind
    if kind == "exp_neg":
        return PowerSeries(_exp_coeffs(order, -1))
    if kind == "exp_neg_half_square":
        out = [Fraction(0)] * (order + 1)
        for k in range(order // 2 + 1):
            out[2 * k] = Fraction((-1) ** k, 2**k * factorial(k))
        return PowerSeries(out)
    if kind == "hermite2":
        out = [Fraction(0)] * (order + 1)
        for k in range(order // 2 + 1):
            out[2 * k] = a.y**k / factorial(k)
        return PowerSeries(out)
    if kind == "trunc_exp":
        return PowerSeries([a.y**k for k in range(order + 1)])
    exp_t = _exp_coeffs(order + 1)
    if kind == "euler":
        # 2 / (e^t + 1)
        den = PowerSeries([exp_t[0] + 1] + exp_t[1 : order + 1])
        num = PowerSeries([2] + [0] * order)
        return series_divide(num, den)
    if kind == "bernoulli":
        # t / (e^t - 1): cancel the common factor t first
        den = PowerSeries(exp_t[1 : order + 2])
        num = PowerSeries([1] + [0] * order)
        return series_divide(num, den)
    raise AssertionError(kind)


def _integer_row(row: list[Fraction]) -> list[int]:
    den = lcm(*(c.denominator for c in row)) if row else 1
    ints = [int(c * den) for c in row]
    return _primitive(ints)


def _primitive(row: list[int]) -> list[int]:
    g = 0
    for v in row:
        g = gcd(g, v)
    if g > 1:
        row = [v // g for v in row]
    return row


def _solve_denominator(c: PowerSeries, m: int, n: int) -> list[Fraction]:
    """Denominator coefficients ``b_1..b_n`` from the equations at orders m+1..m+n.

    Rows are cleared to integers and eliminated in order of increasing
    matching order without division (each combined row is reduced by its
    content).  A row that eliminates to ``0 = nonzero`` is the first
    unsatisfiable order; a row that eliminates to ``0 = 0`` is a consistent
    degeneracy and the corresponding unknown is left at zero.
    """
    def coef(j: int) -> Fraction:
        return c[j] if j >= 0 else Fraction(0)

    pivots: list[tuple[int, list[int]]] = []
    for k in range(m + 1, m + n + 1):
        # sum_{j=1..n} c_{k-j} b_j = -c_k
        row = _integer_row([coef(k - j) for j in range(1, n + 1)] + [-c[k]])
        for col, prow in pivots:
            if row[col] != 0:
                a, b = prow[col], row[col]
                row = _primitive([a * rv - b * pv for rv, pv in zip(row, prow)])
        lead = next((j for j in range(n) if row[j] != 0), None)
        if lead is None:
            if row[n] != 0:
                raise PadeDefect(k, m, n)
            continue
        pivots.append((lead, row))

    b = [Fraction(0)] * n
    for col, prow in reversed(pivots):
        acc = Fraction(prow[n])
        for j in range(col + 1, n):
            acc -= prow[j] * b[j]
        b[col] = acc / prow[col]
    return b


def solve_pade(c: PowerSeries, m: int, n: int) -> PadeApproximant:
    """[m|n] Padé approximant of the series ``c`` with denominator ``Q(0) = 1``."""
    if m < 0 or n < 0:
        raise ValueError("Padé orders must be non-negative")
    if c.order < m + n:
        raise ValueError(f"need coefficients through order {m + n}, series has {c.order}")
    b =[Fraction(1)] + _solve_denominator(c, m, n)
    a = [sum((c[k - j] * b[j] for j in range(min(k, n) + 1)), Fraction(0)) for k in range(m + 1)]
    tag = c.tag
    return PadeApproximant(m, n, RationalFunction(Poly(a, tag), Poly(b, tag)))


def pade_of_amplitude(a: AmplitudeSpec, m: int, n: int) -> PadeApproximant:
    """Padé approximant of a catalogue amplitude in ``t``.

    Even amplitudes are approximated in the inner variable ``u`` of ``e^{-u}``
    and mapped back (``u = t^2/2`` or ``u = -y t^2``), so the result is even in t.
    """
    if m < 0 or n < 0:
        raise ValueError("Padé orders must be non-negative")
    if a.is_even:
        inner = solve_pade(maclaurin(AmplitudeSpec("exp_neg"), m + n), m, n)
        scale = Fraction(1, 2) if a.kind == "exp_neg_half_square" else -a.y
        num = poly_substitute(inner.numerator, scale, 2)
        den = poly_substitute(inner.denominator, scale, 2)
        return PadeApproximant(m, n, RationalFunction(num, den))
    return solve_pade(maclaurin(a, m + n), m, n)


def agreement_order(f: RationalFunction, c: PowerSeries) -> int:
    """Largest ``k <= c.order`` with ``f`` matching ``c`` through ``t^k``; -1 if even c_0 differs."""
    s = f.series(c.order)
    for k in range(c.order + 1):
        if s[k] != c[k]:
            return k - 1
    return c.order


def _rf(num, den, tag="t") -> RationalFunction:
    return RationalFunction(Poly(num, tag), Poly(den, tag))


# Commonly quoted [2|1] operator for the Euler amplitude.  It matches 2/(e^t+1)
# only through t^2, and the standard [2|1] system is inconsistent, so the
# solver can never produce it; kept verbatim for the closed-form checks.
EULER_21_PRINTED = _rf(
    [1, Fraction(-5, 12), Fraction(-1, 24)],
    [1, Fraction(1, 12)],
)


def euler_from_exp_pade(m: int = 2, n: int = 1) -> RationalFunction:
    """Euler amplitude ``2/(e^t + 1)`` with ``e^t`` replaced by its [m|n] Padé.

    For (2, 1) this gives (1 - t/3) / (1 + t/6 + t^2/12).
    """
    e = solve_pade(PowerSeries(_exp_coeffs(m + n)), m, n).value
    p, q = e.numerator, e.denominator
    return RationalFunction(q.scale(2), p + q)


def exp_neg_pade(m: int, n: int) -> RationalFunction:
    return pade_of_amplitude(AmplitudeSpec("exp_neg"), m, n).value
