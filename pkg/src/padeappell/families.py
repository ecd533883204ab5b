"""Exact reference polynomials and number sequences.

Two-variable families are bound to a rational ``y`` and returned as
polynomials in x.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .exact_algebra import Poly, PowerSeries, RationalFunction, as_rational
from .pade import AmplitudeSpec, maclaurin

FAMILY_KINDS = (
    "hermite1",
    "hermite2",
    "he",
    "trunc_exp",
    "trunc_exp2",
    "chebyshev2",
    "euler",
    "bernoulli",
)
_TWO_VARIABLE = {"hermite1", "hermite2", "trunc_exp", "trunc_exp2", "chebyshev2"}


class UnsupportedFamily(ValueError):
    pass


@dataclass(frozen=True)
class FamilyId:
    kind: str
    y: Fraction | None = None

    def __post_init__(self):
        if self.kind not in FAMILY_KINDS:
            raise ValueError(f"unknown family {self.kind!r}; expected one of {FAMILY_KINDS}")
        if self.kind in _TWO_VARIABLE:
            if self.y is None:
                raise ValueError(f"family {self.kind!r} needs parameter y")
            object.__setattr__(self, "y", as_rational(self.y))
        elif self.y is not None:
            raise ValueError(f"family {self.kind!r} takes no parameter")

    def __str__(self) -> str:
        return self.kind if self.y is None else f"{self.kind}(y={self.y})"


def falling(n: int, k: int) -> int:
    """n!/(n-k)!, zero when k > n."""
    if k > n or n < 0:
        return 0
    return factorial(n) // factorial(n - k)


class NumberSequence:
    """Lazily extended, append-only cache of exact values."""

    def __init__(self, step):
        self._values: list[Fraction] = []
        self._step = step
        self._lock = threading.Lock()

    def __getitem__(self, r: int) -> Fraction:
        if r < 0:
            raise IndexError(r)
        if r >= len(self._values):
            with self._lock:
                while len(self._values) <= r:
                    self._values.append(self._step(self._values))
        return self._values[r]


def _bernoulli_step(prev: list[Fraction]) -> Fraction:
    r = len(prev)
    if r == 0:
        return Fraction(1)
    # sum_{j=0}^{r} C(r+1, j) B_j = 0
    acc = sum((comb(r + 1, j) * prev[j] for j in range(r)), Fraction(0))
    return -acc / (r + 1)


_BERNOULLI = NumberSequence(_bernoulli_step)


def bernoulli_number(r: int) -> Fraction:
    return _BERNOULLI[r]


def chebyshev_u(r: int, a, b) -> Fraction:
    """U_r(a, b): coefficient of t^r in 1/(1 + a t + b t^2)."""
    if r < 0:
        raise ValueError("index must be >= 0")
    a, b = as_rational(a), as_rational(b)
    u_prev, u = Fraction(0), Fraction(1)
    for _ in range(r):
        u_prev, u = u, -a * u - b * u_prev
    return u


def chebyshev_sequence(count: int, a, b) -> list[Fraction]:
    a, b = as_rational(a), as_rational(b)
    out = [Fraction(1), -a][:count]
    while len(out) < count:
        out.append(-a * out[-1] - b * out[-2])
    return out


def _family_amplitude_series(f: FamilyId, order: int) -> PowerSeries:
    kind = f.kind
    if kind == "hermite1":
        return PowerSeries([f.y**k / factorial(k) for k in range(order + 1)])
    if kind == "hermite2":
        return maclaurin(AmplitudeSpec("hermite2", f.y), order)
    if kind == "he":
        return maclaurin(AmplitudeSpec("exp_neg_half_square"), order)
    if kind == "trunc_exp":
        return maclaurin(AmplitudeSpec("trunc_exp", f.y), order)
    if kind == "trunc_exp2":
        out = [Fraction(0)] * (order + 1)
        for k in range(order // 2 + 1):
            out[2 * k] = f.y**k
        return PowerSeries(out)
    if kind in ("euler", "bernoulli"):
        return maclaurin(AmplitudeSpec(kind), order)
    raise UnsupportedFamily(f"{kind} has no Appell amplitude")


def amplitude_spec(f: FamilyId) -> AmplitudeSpec:
    """Catalogue amplitude generating the family."""
    if f.kind == "hermite1" and f.y == -1:
        return AmplitudeSpec("exp_neg")
    if f.kind == "he":
        return AmplitudeSpec("exp_neg_half_square")
    if f.kind == "hermite2":
        return AmplitudeSpec("hermite2", f.y)
    if f.kind == "trunc_exp":
        return AmplitudeSpec("trunc_exp", f.y)
    if f.kind in ("euler", "bernoulli"):
        return AmplitudeSpec(f.kind)
    raise UnsupportedFamily(f"{f} has no amplitude in the catalogue")


def family_of_amplitude(a: AmplitudeSpec) -> FamilyId:
    if a.kind == "exp_neg":
        return FamilyId("hermite1", Fraction(-1))
    if a.kind == "exp_neg_half_square":
        return FamilyId("he")
    if a.kind in ("hermite2", "trunc_exp"):
        return FamilyId(a.kind, a.y)
    return FamilyId(a.kind)


def rational_amplitude(f: FamilyId) -> RationalFunction:
    """Exact amplitude in ``dx`` for families whose amplitude is already rational."""
    if f.kind == "trunc_exp":
        return RationalFunction(Poly([1], "dx"), Poly([1, -f.y], "dx"))
    if f.kind == "trunc_exp2":
        return RationalFunction(Poly([1], "dx"), Poly([1, 0, -f.y], "dx"))
    raise UnsupportedFamily(f"{f} amplitude is not rational; use a Padé image")


def _appell_from_series(c: PowerSeries, n: int) -> Poly:
    # n! [t^n] A(t) e^{xt}
    return Poly([c[n - j] * falling(n, n - j) for j in range(n + 1)], "x")


def trunc_exp_poly(n: int, y) -> Poly:
    """e_n(x, y) = n! sum_r x^(n-r) y^r / (n-r)!"""
    if n < 0:
        return Poly([0])
    y = as_rational(y)
    return Poly([falling(n, n - j) * y ** (n - j) for j in range(n + 1)])


def trunc_exp2_poly(n: int, y) -> Poly:
    """e_n^(2)(x, y) = n! sum_r x^(n-2r) y^r / (n-2r)!"""
    if n < 0:
        return Poly([0])
    y = as_rational(y)
    out = [Fraction(0)] * (n + 1)
    for r in range(n // 2 + 1):
        out[n - 2 * r] = falling(n, 2 * r) * y**r
    return Poly(out)


def hermite2_poly(n: int, y) -> Poly:
    """H_n^(2)(x, y) = n! sum_r x^(n-2r) y^r / ((n-2r)! r!)"""
    if n < 0:
        return Poly([0])
    y = as_rational(y)
    out = [Fraction(0)] * (n + 1)
    for r in range(n // 2 + 1):
        out[n - 2 * r] = Fraction(falling(n, 2 * r) * y**r, factorial(r))
    return Poly(out)


def exact_polynomial(f: FamilyId, n: int) -> Poly:
    """Exact n-th member of the family as a polynomial in x."""
    if n < 0:
        raise ValueError("index must be >= 0")
    kind = f.kind
    if kind == "hermite1":
        return Poly([comb(n, j) * f.y ** (n - j) for j in range(n + 1)])
    if kind == "hermite2":
        return hermite2_poly(n, f.y)
    if kind == "he":
        return hermite2_poly(n, Fraction(-1, 2))
    if kind == "trunc_exp":
        return trunc_exp_poly(n, f.y)
    if kind == "trunc_exp2":
        return trunc_exp2_poly(n, f.y)
    if kind == "bernoulli":
        return Poly([comb(n, j) * bernoulli_number(n - j) for j in range(n + 1)])
    if kind == "euler":
        return _appell_from_series(maclaurin(AmplitudeSpec("euler"), n), n)
    raise UnsupportedFamily("chebyshev2 is a number sequence; use chebyshev_u")


def generating_check(f: FamilyId, order: int) -> bool:
    """Compare sum_n t^n/n! a_n(x) with A(t) e^{xt} coefficient-wise through t^order."""
    if order < 0:
        raise ValueError("order must be >= 0")
    c = _family_amplitude_series(f, order)
    for n in range(order + 1):
        # [t^n] A(t) e^{xt} = sum_j c_{n-j} x^j / j!
        rhs = Poly([c[n - j] / factorial(j) for j in range(n + 1)])
        lhs = exact_polynomial(f, n).scale(Fraction(1, factorial(n)))
        if lhs != rhs:
            return False
    return True
