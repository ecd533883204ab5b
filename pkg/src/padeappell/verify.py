"""Self-checks behind ``padeappell verify``: every stated invariant, run exactly."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

from .exact_algebra import Poly, series_invert, series_of_poly
from .families import (
    FamilyId,
    bernoulli_number,
    chebyshev_u,
    exact_polynomial,
    generating_check,
    rational_amplitude,
)
from .operators import (
    CLOSED_FORMS,
    apply_operator,
    closed_form,
    commutator_identity_residual,
    monomiality_operators,
    ode_residual,
    operator_route,
    pade_appell,
    pade_operator,
    structural_identities,
)
from .pade import (
    EULER_21_PRINTED,
    AmplitudeSpec,
    PadeDefect,
    agreement_order,
    maclaurin,
    pade_of_amplitude,
)
from .umbral import (
    MomentFunctional,
    UmbralPolynomial,
    bessel_pade_series,
    j0_series,
    linearize,
    umbral_euler,
    umbral_pade_bernoulli,
)

SUITES = ("algebra", "pade", "families", "theorems", "odes", "monomiality", "structural", "umbral", "lab")

_REGISTRY: list[tuple[str, str, Callable[[], bool]]] = []


def check(suite: str, name: str):
    def deco(fn):
        _REGISTRY.append((suite, name, fn))
        return fn

    return deco


@dataclass
class CheckResult:
    suite: str
    name: str
    passed: bool
    detail: str = ""


def run(suite: str = "all") -> Iterator[CheckResult]:
    if suite != "all" and suite not in SUITES:
        raise KeyError(f"unknown suite {suite!r}")
    for s, name, fn in _REGISTRY:
        if suite not in ("all", s):
            continue
        try:
            ok = bool(fn())
            yield CheckResult(s, name, ok)
        except Exception as exc:  # a crashing check is a failing check
            yield CheckResult(s, name, False, f"{type(exc).__name__}: {exc}")


def _random_poly(rng: random.Random, deg: int) -> Poly:
    return Poly([Fraction(rng.randint(-9, 9), rng.randint(1, 6)) for _ in range(deg + 1)])


# in-range Padé orders for the exhaustive checks
ORDERS = [(m, n) for s in range(1, 6) for m in range(s + 1) for n in [s - m]]

CATALOG = [
    AmplitudeSpec("exp_neg"),
    AmplitudeSpec("exp_neg_half_square"),
    AmplitudeSpec("trunc_exp", Fraction(1)),
    AmplitudeSpec("trunc_exp", Fraction(-1, 3)),
    AmplitudeSpec("euler"),
    AmplitudeSpec("bernoulli"),
    AmplitudeSpec("hermite2", Fraction(1, 3)),
]

# ---------------------------------------------------------------- algebra


@check("algebra", "q * (1/q) == 1 through the truncation order")
def _invert_multiply():
    rng = random.Random(7)
    for _ in range(40):
        q = Poly([1] + [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(rng.randint(0, 5))], "t")
        k = rng.randint(0, 12)
        prod = series_of_poly(q, k) * series_invert(q, k)
        if list(prod) != [1] + [0] * k:
            return False
    return True


@check("algebra", "derivative is linear and obeys the product rule (deg <= 8)")
def _derivative_rules():
    rng = random.Random(11)
    for _ in range(40):
        p, q = _random_poly(rng, rng.randint(0, 8)), _random_poly(rng, rng.randint(0, 8))
        c = Fraction(rng.randint(-7, 7), rng.randint(1, 5))
        if (p + q.scale(c)).derivative() != p.derivative() + q.derivative().scale(c):
            return False
        if (p * q).derivative() != p.derivative() * q + p * q.derivative():
            return False
    return True


# ---------------------------------------------------------------- pade


@check("pade", "every computed approximant agrees through order m+n")
def _pade_agreement():
    for a in CATALOG:
        for m, n in ORDERS:
            try:
                p = pade_of_amplitude(a, m, n)
            except PadeDefect:
                continue
            if agreement_order(p.value, maclaurin(a, 2 * (m + n) + 4)) < m + n:
                return False
    return True


@check("pade", "[m|0] is the Maclaurin truncation (m <= 6; degree 2m in t for even amplitudes)")
def _pade_m0():
    for a in CATALOG:
        for m in range(7):
            p = pade_of_amplitude(a, m, 0)
            deg = 2 * m if a.is_even else m
            if p.denominator != 1 or p.numerator != maclaurin(a, deg).to_poly():
                return False
    return True


@check("pade", "denominator of [0|n] e^{-t} is the Taylor polynomial of e^t (n <= 6)")
def _pade_0n():
    for n in range(1, 7):
        den = pade_of_amplitude(AmplitudeSpec("exp_neg"), 0, n).denominator
        taylor = maclaurin(AmplitudeSpec("exp_neg"), n).to_poly()
        taylor = Poly([c * (-1) ** k for k, c in enumerate(taylor.coeffs)], "t")
        if den != taylor:
            return False
    return True


@check("pade", "Euler [2|1] is defective at order 3; printed [2|1] agrees only through t^2")
def _euler_defect():
    try:
        pade_of_amplitude(AmplitudeSpec("euler"), 2, 1)
    except PadeDefect as d:
        return d.order == 3 and agreement_order(EULER_21_PRINTED, maclaurin(AmplitudeSpec("euler"), 8)) == 2
    return False


# ---------------------------------------------------------------- families

APPELL = [
    FamilyId("hermite1", -1),
    FamilyId("hermite1", Fraction(2, 3)),
    FamilyId("hermite2", Fraction(1, 3)),
    FamilyId("he"),
    FamilyId("trunc_exp", 1),
    FamilyId("trunc_exp", Fraction(-1, 2)),
    FamilyId("trunc_exp2", Fraction(-1, 4)),
    FamilyId("euler"),
    FamilyId("bernoulli"),
]


@check("families", "d/dx a_n = n a_{n-1} (1 <= n <= 10)")
def _appell_derivative():
    return all(
        exact_polynomial(f, n).derivative() == exact_polynomial(f, n - 1).scale(n)
        for f in APPELL
        for n in range(1, 11)
    )


@check("families", "e_n(x,0) = e_n^(2)(x,0) = x^n")
def _trunc_at_zero():
    return all(
        exact_polynomial(FamilyId(k, 0), n) == Poly.monomial(n)
        for k in ("trunc_exp", "trunc_exp2")
        for n in range(11)
    )


@check("families", "H_n^(1)(x,y) = (x+y)^n (n <= 10)")
def _binomial():
    for y in (Fraction(-1), Fraction(3, 7)):
        for n in range(11):
            if exact_polynomial(FamilyId("hermite1", y), n) != Poly([y, 1]) ** n:
                return False
    return True


@check("families", "U_r(a,b) equals the series inverse of 1 + a t + b t^2 (r <= 12)")
def _chebyshev():
    pairs = [(Fraction(1, 2), Fraction(1, 8)), (Fraction(1, 5), Fraction(1, 80)), (Fraction(1, 2), Fraction(1, 4)),
             (Fraction(1, 6), Fraction(1, 12)), (Fraction(1), Fraction(1, 2))]
    for a, b in pairs:
        inv = series_invert(Poly([1, a, b], "t"), 12)
        if any(chebyshev_u(r, a, b) != inv[r] for r in range(13)):
            return False
    return True


@check("families", "generating relation holds for every Appell family (order 8)")
def _generating():
    return all(generating_check(f, 8) for f in APPELL)


@check("families", "Bernoulli numbers match the t/(e^t-1) series")
def _bernoulli_numbers():
    from math import factorial

    c = maclaurin(AmplitudeSpec("bernoulli"), 16)
    return all(bernoulli_number(r) == c[r] * factorial(r) for r in range(17))


# ---------------------------------------------------------------- operators

_EXACTNESS_FAMILIES = [
    (AmplitudeSpec("exp_neg"), FamilyId("hermite1", -1)),
    (AmplitudeSpec("exp_neg_half_square"), FamilyId("he")),
    (AmplitudeSpec("trunc_exp", 1), FamilyId("trunc_exp", 1)),
    (AmplitudeSpec("trunc_exp", Fraction(-1, 3)), FamilyId("trunc_exp", Fraction(-1, 3))),
    (AmplitudeSpec("euler"), FamilyId("euler")),
    (AmplitudeSpec("bernoulli"), FamilyId("bernoulli")),
    (AmplitudeSpec("hermite2", Fraction(1, 3)), FamilyId("hermite2", Fraction(1, 3))),
]


def exactness_order_failures(max_index: int = 12) -> list[tuple]:
    """(amplitude, m, n, k) where the approximated polynomial differs within the agreement order."""
    bad = []
    for a, fam in _EXACTNESS_FAMILIES:
        ref = maclaurin(a, 40)
        for m, n in ORDERS:
            try:
                agree = agreement_order(pade_of_amplitude(a, m, n).value, ref)
            except PadeDefect:
                continue
            for k in range(min(agree, max_index) + 1):
                if pade_appell(fam, m, n, k).value != exact_polynomial(fam, k):
                    bad.append((a, m, n, k))
    return bad


@check("theorems", "approximated polynomials are exact within the agreement order (m+n <= 5, k <= 12)")
def _exactness():
    return not exactness_order_failures()


for _tid in CLOSED_FORMS:

    def _mk(tid):
        return lambda: all(closed_form(tid, n) == operator_route(tid, n) for n in range(13))

    check("theorems", f"closed form {_tid} equals the operator route (n <= 12)")(_mk(_tid))


@check("odes", "truncated exponential ODE, e_n(x,1), n <= 10")
def _ode_trunc():
    return all(ode_residual("trunc_exp", n).is_zero() for n in range(11))


@check("odes", "third-order ODE of the [1|1] image of H_n(x,-1), n <= 10")
def _ode_third():
    return all(ode_residual("hermite1_pade11", n).is_zero() for n in range(11))


@check("odes", "ODE of e_n^(2)(x,y), y in {1, 1/3, -1/4}, n <= 10")
def _ode_trunc2():
    ys = (Fraction(1), Fraction(1, 3), Fraction(-1, 4))
    return all(ode_residual("trunc_exp2", n, y).is_zero() for n in range(11) for y in ys)


def _monomial_sequences():
    yield "trunc_exp(y=1)", rational_amplitude(FamilyId("trunc_exp", 1)), lambda n: exact_polynomial(
        FamilyId("trunc_exp", 1), n
    )
    fam = FamilyId("hermite1", -1)
    for m, n in ORDERS:
        op = pade_operator(fam, m, n)
        yield f"[{m}|{n}] H(x,-1)", op, (lambda n_, m=m, n=n: pade_appell(fam, m, n, n_).value)


@check("monomiality", "M P a_n = n a_n and M a_n = a_{n+1} (n <= 10)")
def _monomiality():
    for _, amp, seq in _monomial_sequences():
        mono = monomiality_operators(amp)
        for n in range(11):
            a_n = seq(n)
            if mono.multiplicative(mono.derivative(a_n)) != a_n.scale(n):
                return False
            if mono.multiplicative(a_n) != seq(n + 1):
                return False
    return True


@check("monomiality", "[1|1] Hermite image: A'/A = -1/(1 - D^2/4)")
def _hermite_log_derivative():
    mono = monomiality_operators(pade_operator(FamilyId("hermite1", -1), 1, 1))
    r = mono.log_derivative
    return r.numerator == Poly([-1], "dx") and r.denominator == Poly([1, 0, Fraction(-1, 4)], "dx")


@check("monomiality", "[A(D) x + A'(D)] D a_n = n A(D) a_n for rational amplitudes (n <= 8)")
def _commutator():
    amps = [rational_amplitude(FamilyId("trunc_exp", 1)), rational_amplitude(FamilyId("trunc_exp2", Fraction(1, 3)))]
    amps += [pade_operator(FamilyId("hermite1", -1), m, n) for m, n in ORDERS]
    amps += [pade_operator(FamilyId("he"), 3, 2)]
    for amp in amps:
        for n in range(9):
            a_n = apply_operator(amp, Poly.monomial(n))
            if not commutator_identity_residual(amp, a_n, n).is_zero():
                return False
    return True


@check("structural", "y-recurrence of e_n(x,y), n <= 10")
def _y_recurrence():
    return all(structural_identities("y_recurrence", "trunc_exp", n).is_zero() for n in range(11))


@check("structural", "homogeneity (y d/dy + x d/dx) a_n = n a_n, hermite1 and trunc_exp, n <= 10")
def _homogeneity():
    return all(
        structural_identities("homogeneity", f, n).is_zero() for f in ("hermite1", "trunc_exp") for n in range(11)
    )


@check("structural", "evolution d/dy a_n = T(y) D a_n for trunc_exp, y in {1/2, 1, 2}, n <= 8")
def _evolution():
    ys = (Fraction(1, 2), Fraction(1), Fraction(2))
    return all(
        structural_identities("y_evolution", "trunc_exp", n, y).is_zero() for n in range(9) for y in ys
    ) and all(structural_identities("y_evolution", "trunc_exp", n).is_zero() for n in range(9))


# ---------------------------------------------------------------- umbral


@check("umbral", "[1|1] B_n = B_n(x) for n <= 3; [1|1] B_4 - B_4(x) = -1/15")
def _umbral_bernoulli():
    b = FamilyId("bernoulli")
    low = all(umbral_pade_bernoulli(1, 1, n) == exact_polynomial(b, n) for n in range(4))
    return low and umbral_pade_bernoulli(1, 1, 4) - exact_polynomial(b, 4) == Poly([Fraction(-1, 15)])


@check("umbral", "[0|2] E_n = E_n(x) for n <= 2; E_3 gap is the constant 1/2")
def _umbral_euler_exact():
    e = FamilyId("euler")
    low = all(umbral_euler("pade02", n) == exact_polynomial(e, n) for n in range(3))
    return low and umbral_euler("pade02", 3) - exact_polynomial(e, 3) == Poly([Fraction(1, 2)])


@check("umbral", "umbral and operator routes coincide for [0|2] E_n(x; 1/2, 1/4), n <= 10")
def _umbral_vs_operator():
    a, b = Fraction(1, 2), Fraction(1, 4)
    from .exact_algebra import RationalFunction

    op = RationalFunction(Poly([1], "dx"), Poly([1, a, b], "dx"))
    return all(umbral_euler("pade02", n, a, b) == apply_operator(op, Poly.monomial(n)) for n in range(11))


@check("umbral", "Bessel [0|k] series matches J0 through x^(2k), k = 1..6")
def _bessel():
    for k in range(1, 7):
        s, j = bessel_pade_series(k, k + 3), j0_series(k + 3)
        if any(s[i] != j[i] for i in range(2 * k + 1)) or s[2 * k + 2] == j[2 * k + 2]:
            return False
    return True


@check("umbral", "linearisation is additive and homogeneous")
def _linearity():
    rng = random.Random(3)
    phis = [MomentFunctional("bernoulli"), MomentFunctional("chebyshev", Fraction(1, 2), Fraction(1, 4)),
            MomentFunctional("factorial_reciprocal")]
    for _ in range(20):
        u = UmbralPolynomial({r: _random_poly(rng, rng.randint(0, 5)) for r in range(rng.randint(0, 6))})
        v = UmbralPolynomial({r: _random_poly(rng, rng.randint(0, 5)) for r in range(rng.randint(0, 6))})
        c = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        for phi in phis:
            if linearize(u + v.scale(c), phi) != linearize(u, phi) + linearize(v, phi).scale(c):
                return False
    return True


# ---------------------------------------------------------------- lab


@check("lab", "figure CSV output is byte-identical across runs")
def _determinism():
    from .lab import FIGURES, figure_emit

    return all(figure_emit(fid) == figure_emit(fid) for fid in FIGURES)


@check("lab", "coefficient conversion to double is correctly rounded")
def _conversion():
    from .lab import evaluate

    rng = random.Random(5)
    for _ in range(200):
        q = Fraction(rng.randint(-10**30, 10**30), rng.randint(1, 10**25))
        if evaluate(Poly([q]), [0.0])[0] != q.numerator / q.denominator:
            return False
    return True
