"""Umbral images: moment functionals and the polynomials they linearise.

An umbra is kept as a commuting formal symbol; a polynomial in x whose
coefficients also carry powers of the umbra is stored as ``{r: Poly}``.
Linearisation replaces umbra^r by the r-th moment exactly once, at the end.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .exact_algebra import Poly, PowerSeries, as_rational, series_invert
from .families import bernoulli_number, chebyshev_u, falling
from .pade import AmplitudeSpec, maclaurin, solve_pade

MOMENT_KINDS = ("bernoulli", "chebyshev", "factorial_reciprocal")


@dataclass(frozen=True)
class MomentFunctional:
    kind: str
    a: Fraction | None = None
    b: Fraction | None = None

    def __post_init__(self):
        if self.kind not in MOMENT_KINDS:
            raise ValueError(f"unknown moment functional {self.kind!r}")
        if self.kind == "chebyshev":
            if self.a is None or self.b is None:
                raise ValueError("chebyshev functional needs a and b")
            object.__setattr__(self, "a", as_rational(self.a))
            object.__setattr__(self, "b", as_rational(self.b))

    def __call__(self, r: int) -> Fraction:
        if r < 0:
            raise ValueError("moment index must be >= 0")
        if self.kind == "bernoulli":
            return bernoulli_number(r)
        if self.kind == "chebyshev":
            return chebyshev_u(r, self.a, self.b)
        return Fraction(1, factorial(r))


@dataclass(frozen=True)
class UmbralPolynomial:
    """sum_r umbra^r * terms[r](x)."""

    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {r: p for r, p in self.terms.items() if not p.is_zero()}
        object.__setattr__(self, "terms", clean)

    def __add__(self, other: "UmbralPolynomial") -> "UmbralPolynomial":
        out = dict(self.terms)
        for r, p in other.terms.items():
            out[r] = out[r] + p if r in out else p
        return UmbralPolynomial(out)

    def scale(self, c) -> "UmbralPolynomial":
        return UmbralPolynomial({r: p.scale(c) for r, p in self.terms.items()})

    def times_umbra(self, k: int = 1) -> "UmbralPolynomial":
        return UmbralPolynomial({r + k: p for r, p in self.terms.items()})


def linearize(u: UmbralPolynomial, phi: MomentFunctional) -> Poly:
    out = Poly([0])
    for r, p in u.terms.items():
        out = out + p.scale(phi(r))
    return out


def umbral_trunc_exp(n: int, umbra_scale=1) -> UmbralPolynomial:
    """e_n(x, s*umbra) = n! sum_r x^(n-r) (s*umbra)^r / (n-r)!"""
    if n < 0:
        return UmbralPolynomial()
    s = as_rational(umbra_scale)
    return UmbralPolynomial({r: Poly.monomial(n - r, falling(n, r) * s**r) for r in range(n + 1)})


def _operator_on_monomial(coeffs, n: int) -> UmbralPolynomial:
    """sum_k coeffs[k] umbra^k D^k x^n."""
    terms = {}
    for k, c in enumerate(coeffs[: n + 1]):
        if c != 0:
            terms[k] = Poly.monomial(n - k, c * falling(n, k))
    return UmbralPolynomial(terms)


def umbral_pade_bernoulli(m: int, n: int, index: int) -> Poly:
    """[m|n] Padé of e^v with v -> B t, acting on x^index, linearised with Bernoulli numbers.

    For (1, 1) this is (1 + B D/2)/(1 - B D/2) x^index.
    """
    if index < 0:
        raise ValueError("index must be >= 0")
    exp_series = PowerSeries([Fraction(1, factorial(k)) for k in range(m + n + 1)])
    rf = solve_pade(exp_series, m, n).value
    # every power v^k carries umbra^k D^k, so the operator series is the scalar series
    coeffs = rf.series(index).coeffs
    return linearize(_operator_on_monomial(coeffs, index), MomentFunctional("bernoulli"))


def bernoulli_pade11_closed_form(n: int) -> Poly:
    """e_n(x, B/2) + (n/2) B e_{n-1}(x, B/2), linearised."""
    u = umbral_trunc_exp(n, Fraction(1, 2)) + umbral_trunc_exp(n - 1, Fraction(1, 2)).times_umbra().scale(
        Fraction(n, 2)
    )
    return linearize(u, MomentFunctional("bernoulli"))


EULER_VARIANTS = {
    "pade02": (Fraction(1, 2), Fraction(1, 4)),
    "pade12": (Fraction(1, 6), Fraction(1, 12)),
}


def umbral_euler(variant: str, index: int, a=None, b=None) -> Poly:
    """Euler approximants through the Chebyshev umbra u^r -> U_r(a, b).

    ``pade02``: e_n(x, u) linearised (defaults a=1/2, b=1/4).
    ``pade12``: e_n(x, u) - (n/3) e_{n-1}(x, u) linearised (defaults a=1/6, b=1/12).
    """
    if variant not in EULER_VARIANTS:
        raise KeyError(f"unknown Euler variant {variant!r}; expected one of {sorted(EULER_VARIANTS)}")
    if index < 0:
        raise ValueError("index must be >= 0")
    da, db = EULER_VARIANTS[variant]
    phi = MomentFunctional("chebyshev", da if a is None else a, db if b is None else b)
    u = umbral_trunc_exp(index)
    if variant == "pade12":
        u = u + umbral_trunc_exp(index - 1).scale(Fraction(-index, 3))
    return linearize(u, phi)


def bernoulli_order2(n: int, y) -> Poly:
    """H_n^(2)(x, y B) linearised: n! sum_r x^(n-2r) y^r B_r / ((n-2r)! r!)."""
    if n < 0:
        raise ValueError("index must be >= 0")
    y = as_rational(y)
    out = [Fraction(0)] * (n + 1)
    for r in range(n // 2 + 1):
        out[n - 2 * r] = falling(n, 2 * r) * y**r * bernoulli_number(r) / factorial(r)
    return Poly(out)


DEFAULT_BESSEL_TERMS = 25


def bessel_pade_series(k: int, terms: int = DEFAULT_BESSEL_TERMS) -> PowerSeries:
    """[0|k] umbral Padé of J0 as an even series in x, through x^(2*terms).

    The coefficient of x^(2r) is V_r / (4^r r!), with V_r the series
    coefficients of 1/(1 + u + ... + u^k/k!).
    """
    if k < 1:
        raise ValueError("denominator order must be >= 1")
    if terms < 0:
        raise ValueError("terms must be >= 0")
    # [0|k] Padé of e^{-u}; its denominator is the degree-k Taylor polynomial of e^u
    den = solve_pade(maclaurin(AmplitudeSpec("exp_neg"), k), 0, k).denominator
    v = series_invert(den, terms)
    out = [Fraction(0)] * (2 * terms + 1)
    for r in range(terms + 1):
        out[2 * r] = v[r] / (4**r * factorial(r))
    return PowerSeries(out, "x")


def j0_series(terms: int) -> PowerSeries:
    """Reference J0 = sum (-1)^r (x/2)^(2r) / (r!)^2 through x^(2*terms)."""
    out = [Fraction(0)] * (2 * terms + 1)
    for r in range(terms + 1):
        out[2 * r] = Fraction((-1) ** r, 4**r * factorial(r) ** 2)
    return PowerSeries(out, "x")
