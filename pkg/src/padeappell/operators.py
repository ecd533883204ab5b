"""Rational differential operators in d/dx acting on polynomials.

An operator P(D)/Q(D) with Q(0) = 1 acts on a polynomial of degree d
through the power series of P/Q truncated at D^d.  D is nilpotent on
polynomials of bounded degree, so the truncation is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable

from .exact_algebra import (
    NormalizationError,
    Poly,
    RationalFunction,
    TagMismatchError,
    as_rational,
)
from .families import (
    FamilyId,
    UnsupportedFamily,
    amplitude_spec,
    chebyshev_u,
    falling,
    trunc_exp2_poly,
    trunc_exp_poly,
)
from .pade import EULER_21_PRINTED, euler_from_exp_pade, pade_of_amplitude

X = Poly([0, 1])


def as_operator(rf: RationalFunction) -> RationalFunction:
    """Reinterpret a rational function in t (or any tag) as an operator in dx."""
    if rf.tag == "dx":
        return rf
    return RationalFunction(Poly(rf.numerator.coeffs, "dx"), Poly(rf.denominator.coeffs, "dx"))


def apply_operator(op: RationalFunction, f: Poly) -> Poly:
    """P(D) [Q(D)^{-1} f] computed exactly."""
    if op.tag != "dx":
        raise TagMismatchError(f"operator must be in 'dx', got {op.tag!r}")
    if f.tag != "x":
        raise TagMismatchError(f"operand must be a polynomial in 'x', got {f.tag!r}")
    d = f.degree
    if d < 0:
        return f
    s = op.series(d)
    out = Poly([0])
    g = f
    for k in range(d + 1):
        if s[k] != 0:
            out = out + g.scale(s[k])
        g = g.derivative()
    return out


def apply_series(coeffs, f: Poly, step: int = 1) -> Poly:
    """sum_k coeffs[k] D^{step*k} f for a finite coefficient list."""
    out = Poly([0])
    for k, c in enumerate(coeffs):
        if c != 0:
            out = out + f.derivative(step * k).scale(c)
    return out


@dataclass(frozen=True)
class ApproximatedPolynomial:
    family: FamilyId
    m: int
    n: int
    index: int
    value: Poly


def pade_operator(family: FamilyId, m: int, n: int) -> RationalFunction:
    """[m|n] Padé image of the family amplitude as an operator in dx."""
    return as_operator(pade_of_amplitude(amplitude_spec(family), m, n).value)


def pade_appell(family: FamilyId, m: int, n: int, index: int) -> ApproximatedPolynomial:
    if index < 0:
        raise ValueError("index must be >= 0")
    op = pade_operator(family, m, n)
    return ApproximatedPolynomial(family, m, n, index, apply_operator(op, Poly.monomial(index)))


# ---------------------------------------------------------------------------
# closed forms

def _u_sum(n: int, a, b, step: int) -> Poly:
    """n! sum_r U_r(a,b) x^(n - step*r) / (n - step*r)!"""
    out = Poly([0])
    for r in range(n // step + 1):
        u = chebyshev_u(r, a, b)
        out = out + Poly.monomial(n - step * r, u * falling(n, step * r))
    return out


def _hermite1_pade11(n: int) -> Poly:
    y = Fraction(-1, 2)
    return trunc_exp_poly(n, y) - trunc_exp_poly(n - 1, y).scale(Fraction(n, 2))


def _hermite1_pade21(n: int) -> Poly:
    y = Fraction(-1, 3)
    return (
        trunc_exp_poly(n, y)
        - trunc_exp_poly(n - 1, y).scale(Fraction(2 * n, 3))
        + trunc_exp_poly(n - 2, y).scale(Fraction(n * (n - 1), 6))
    )


def _he_pade11(n: int) -> Poly:
    y = Fraction(-1, 4)
    return trunc_exp2_poly(n, y) - trunc_exp2_poly(n - 2, y).scale(Fraction(n * (n - 1), 4))


def _he_pade02(n: int) -> Poly:
    return _u_sum(n, Fraction(1, 2), Fraction(1, 8), 2)


def _he_pade32(n: int) -> Poly:
    def d(k: int) -> Poly:
        if k < 0:
            return Poly([0])
        return _u_sum(k, Fraction(1, 5), Fraction(1, 80), 2)

    return (
        d(n)
        - d(n - 2).scale(Fraction(3, 10) * falling(n, 2))
        + d(n - 4).scale(Fraction(3, 80) * falling(n, 4))
        - d(n - 6).scale(Fraction(1, 480) * falling(n, 6))
    )


def _euler_pade02(n: int) -> Poly:
    return _u_sum(n, Fraction(1, 2), Fraction(1, 4), 1)


def _euler_pade21(n: int) -> Poly:
    # the last term uses the first-order e_{n-2}; the operator forces it
    y = Fraction(-1, 12)
    return (
        trunc_exp_poly(n, y)
        - trunc_exp_poly(n - 1, y).scale(Fraction(5 * n, 12))
        - trunc_exp_poly(n - 2, y).scale(Fraction(n * (n - 1), 24))
    )


def _euler_pade12(n: int) -> Poly:
    from .umbral import umbral_euler

    return umbral_euler("pade12", n)


def _bernoulli_pade11(n: int) -> Poly:
    from .umbral import bernoulli_pade11_closed_form

    return bernoulli_pade11_closed_form(n)


CLOSED_FORMS: dict[str, Callable[[int], Poly]] = {
    "hermite1_pade11": _hermite1_pade11,
    "hermite1_pade21": _hermite1_pade21,
    "he_pade11": _he_pade11,
    "he_pade02": _he_pade02,
    "he_pade32": _he_pade32,
    "euler_pade02": _euler_pade02,
    "euler_pade21": _euler_pade21,
    "euler_pade12": _euler_pade12,
    "bernoulli_pade11": _bernoulli_pade11,
}


def closed_form(theorem_id: str, index: int) -> Poly:
    """Explicit representation of a Padé-approximated family member."""
    if index < 0:
        raise ValueError("index must be >= 0")
    try:
        fn = CLOSED_FORMS[theorem_id]
    except KeyError:
        raise KeyError(f"unknown closed form {theorem_id!r}; known: {sorted(CLOSED_FORMS)}") from None
    return fn(index)


def operator_route(theorem_id: str, index: int) -> Poly:
    """The same polynomial obtained by applying the rational operator to x^index."""
    xn = Poly.monomial(index)
    if theorem_id == "bernoulli_pade11":
        from .umbral import umbral_pade_bernoulli

        return umbral_pade_bernoulli(1, 1, index)
    if theorem_id == "euler_pade21":
        return apply_operator(as_operator(EULER_21_PRINTED), xn)
    if theorem_id == "euler_pade12":
        return apply_operator(as_operator(euler_from_exp_pade(2, 1)), xn)
    family, m, n = {
        "hermite1_pade11": (FamilyId("hermite1", -1), 1, 1),
        "hermite1_pade21": (FamilyId("hermite1", -1), 2, 1),
        "he_pade11": (FamilyId("he"), 1, 1),
        "he_pade02": (FamilyId("he"), 0, 2),
        "he_pade32": (FamilyId("he"), 3, 2),
        "euler_pade02": (FamilyId("euler"), 0, 2),
    }[theorem_id]
    return pade_appell(family, m, n, index).value


# ---------------------------------------------------------------------------
# monomiality

@dataclass(frozen=True)
class Monomiality:
    """Derivative and multiplicative operators of an Appell family with rational amplitude."""

    amplitude: RationalFunction
    log_derivative: RationalFunction

    def derivative(self, f: Poly) -> Poly:
        return f.derivative()

    def multiplicative(self, f: Poly) -> Poly:
        return X * f + apply_operator(self.log_derivative, f)


def monomiality_operators(amplitude: RationalFunction) -> Monomiality:
    """P = D and M = x + A'(D)/A(D) for a rational amplitude A."""
    a = as_operator(amplitude)
    p, q = a.numerator, a.denominator
    try:
        ratio = RationalFunction(p.derivative() * q - p * q.derivative(), p * q)
    except NormalizationError:
        raise UnsupportedFamily("amplitude numerator vanishes at 0; A'/A is not a power series") from None
    return Monomiality(a, ratio)


def family_amplitude_operator(family: FamilyId, pade: tuple[int, int] | None = None) -> RationalFunction:
    """Rational amplitude operator: exact when rational, otherwise the requested Padé image."""
    from .families import rational_amplitude

    if pade is not None:
        return pade_operator(family, *pade)
    try:
        return rational_amplitude(family)
    except UnsupportedFamily:
        raise UnsupportedFamily(f"{family} needs a Padé order to become rational") from None


def commutator_identity_residual(amplitude: RationalFunction, a_n: Poly, n: int) -> Poly:
    """[A(D) x + A'(D)] D a_n - n A(D) a_n."""
    a = as_operator(amplitude)
    da = a_n.derivative()
    lhs = apply_operator(a, X * da) + apply_operator(a.derivative(), da)
    return lhs - apply_operator(a, a_n).scale(n)


# ---------------------------------------------------------------------------
# differential equations

def ode_residual(which: str, n: int, y=None) -> Poly:
    """Left-hand side minus right-hand side of a stated ODE; zero certifies it.

    ``trunc_exp``: x e'' - (x + n) e' + n e for e_n(x, 1).
    ``hermite1_pade11``: x z''' + (2 - n) z'' + 4(1 - x) z' + 4 n z for the [1|1] image of H_n(x, -1).
    ``trunc_exp2``: y x Z''' - n y Z'' - x Z' + n Z for e_n^(2)(x, y).
    """
    if n < 0:
        raise ValueError("index must be >= 0")
    if which == "trunc_exp":
        e = trunc_exp_poly(n, 1)
        return X * e.derivative(2) - (X + n) * e.derivative() + e.scale(n)
    if which == "hermite1_pade11":
        z = _hermite1_pade11(n)
        return (
            X * z.derivative(3)
            + z.derivative(2).scale(2 - n)
            + (Poly([1, -1]) * z.derivative()).scale(4)
            + z.scale(4 * n)
        )
    if which == "trunc_exp2":
        if y is None:
            raise ValueError("trunc_exp2 ODE needs y")
        y = as_rational(y)
        z = trunc_exp2_poly(n, y)
        return (
            (X * z.derivative(3)).scale(y)
            - z.derivative(2).scale(n * y)
            - X * z.derivative()
            + z.scale(n)
        )
    raise KeyError(f"unknown equation {which!r}")


# ---------------------------------------------------------------------------
# identities in the second variable

class BiPoly:
    """Polynomial in x and y as {(i, j): coeff} for x^i y^j.  Only what the y-identities need."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: as_rational(v) for k, v in (terms or {}).items() if v != 0}

    def __add__(self, other: "BiPoly") -> "BiPoly":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return BiPoly(out)

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + other.scale(-1)

    def scale(self, c) -> "BiPoly":
        c = as_rational(c)
        return BiPoly({k: c * v for k, v in self.terms.items()})

    def times_y(self, k: int = 1) -> "BiPoly":
        return BiPoly({(i, j + k): v for (i, j), v in self.terms.items()})

    def times_x(self, k: int = 1) -> "BiPoly":
        return BiPoly({(i + k, j): v for (i, j), v in self.terms.items()})

    def dx(self, times: int = 1) -> "BiPoly":
        out = self
        for _ in range(times):
            out = BiPoly({(i - 1, j): i * v for (i, j), v in out.terms.items() if i > 0})
        return out

    def dy(self) -> "BiPoly":
        return BiPoly({(i, j - 1): j * v for (i, j), v in self.terms.items() if j > 0})

    def is_zero(self) -> bool:
        return not self.terms

    def at_y(self, y) -> Poly:
        y = as_rational(y)
        deg = max((i for i, _ in self.terms), default=0)
        out = [Fraction(0)] * (deg + 1)
        for (i, j), v in self.terms.items():
            out[i] += v * y**j
        return Poly(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, BiPoly) and self.terms == other.terms

    def __repr__(self) -> str:
        return f"BiPoly({ {k: str(v) for k, v in sorted(self.terms.items())} })"


# amplitude A(y t^p): (p, first coefficients of A'(s)/A(s) pattern)
_Y_FAMILIES = {
    "hermite1": (1, "exp"),
    "trunc_exp": (1, "geometric"),
    "hermite2": (2, "exp"),
    "trunc_exp2": (2, "geometric"),
}


def symbolic_family(kind: str, n: int) -> BiPoly:
    """a_n(x, y) with y kept symbolic."""
    if n < 0:
        return BiPoly()
    if kind not in _Y_FAMILIES:
        raise UnsupportedFamily(f"{kind} is not of the form A(y t^p)")
    p, shape = _Y_FAMILIES[kind]
    terms = {}
    for r in range(n // p + 1):
        c = Fraction(falling(n, p * r))
        if shape == "exp":
            c /= factorial(r)
        terms[(n - p * r, r)] = c
    return BiPoly(terms)


def _log_derivative_operator(kind: str, a: BiPoly) -> BiPoly:
    """T(y) D^p a for amplitude A(y D^p): sum_k tau_k y^k D^{p(k+1)} a."""
    p, shape = _Y_FAMILIES[kind]
    out = BiPoly()
    if shape == "exp":
        return a.dx(p)
    # A(s) = 1/(1-s): A'/A = 1/(1-s), tau_k = 1
    k = 0
    term = a.dx(p)
    while not term.is_zero():
        out = out + term.times_y(k)
        k += 1
        term = term.dx(p)
    return out


def structural_identities(which: str, family: str, n: int, y=None):
    """Residual of an identity in the second variable.

    ``y_recurrence``: d/dy e_n - sum_{r<n} n! y^r/(n-1-r)! e_{n-1-r}  (trunc_exp only).
    ``y_evolution``: d/dy a_n - T(y) D^p a_n with T = A'/A at y D^p.
    ``homogeneity``: (p y d/dy + x d/dx) a_n - n a_n.

    The residual is returned as a BiPoly, or as a Poly in x when ``y`` is bound.
    """
    if n < 0:
        raise ValueError("index must be >= 0")
    if family not in _Y_FAMILIES:
        raise UnsupportedFamily(f"{family} is not of the form A(y t^p)")
    a = symbolic_family(family, n)
    if which == "y_recurrence":
        if family != "trunc_exp":
            raise UnsupportedFamily("the y-recurrence is stated for trunc_exp only")
        rhs = BiPoly()
        for r in range(n):
            rhs = rhs + symbolic_family(family, n - 1 - r).times_y(r).scale(
                Fraction(factorial(n), factorial(n - 1 - r))
            )
        res = a.dy() - rhs
    elif which == "y_evolution":
        if y is not None:
            # bound y: T(y) applied as a rational operator rather than a y-series
            y = as_rational(y)
            p, shape = _Y_FAMILIES[family]
            if shape == "exp":
                t_op = RationalFunction(Poly([1], "dx"))
            else:
                t_op = RationalFunction(Poly([1], "dx"), Poly([1] + [0] * (p - 1) + [-y], "dx"))
            return a.dy().at_y(y) - apply_operator(t_op, a.at_y(y).derivative(p))
        res = a.dy() - _log_derivative_operator(family, a)
    elif which == "homogeneity":
        p = _Y_FAMILIES[family][0]
        res = a.dy().times_y().scale(p) + a.dx().times_x() - a.scale(n)
    else:
        raise KeyError(f"unknown identity {which!r}")
    return res if y is None else res.at_y(y)
