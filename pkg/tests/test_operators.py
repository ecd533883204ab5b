from fractions import Fraction as F
from math import factorial

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from padeappell.exact_algebra import Poly, RationalFunction, TagMismatchError
from padeappell.families import FamilyId, UnsupportedFamily, exact_polynomial, rational_amplitude, trunc_exp_poly
from padeappell.operators import (
    BiPoly,
    CLOSED_FORMS,
    apply_operator,
    as_operator,
    closed_form,
    commutator_identity_residual,
    monomiality_operators,
    ode_residual,
    operator_route,
    pade_appell,
    pade_operator,
    structural_identities,
    symbolic_family,
)
from padeappell.pade import EULER_21_PRINTED, PadeDefect

X = Poly([0, 1])


def op(num, den):
    return RationalFunction(Poly(num, "dx"), Poly(den, "dx"))


def poly_op(p: Poly, f: Poly) -> Poly:
    """Polynomial differential operator, no inversion involved."""
    out = Poly([0])
    for k, c in enumerate(p.coeffs):
        out = out + f.derivative(k).scale(c)
    return out


def test_apply_examples():
    assert apply_operator(op([1, F(-1, 2)], [1, F(1, 2)]), Poly.monomial(2)) == Poly([1, -2, 1])
    assert apply_operator(op([1], [1, F(1, 12)]), Poly.monomial(3)) == Poly([F(-1, 288), F(1, 24), F(-1, 4), 1])
    f = Poly([F(2, 3), -1, 0, 5])
    assert apply_operator(op([1], [1]), f) == f


def test_apply_rejects_wrong_tags():
    with pytest.raises(TagMismatchError):
        apply_operator(RationalFunction(Poly([1, 1], "t")), Poly([1, 1]))
    with pytest.raises(TagMismatchError):
        apply_operator(op([1], [1]), Poly([1, 1], "t"))


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@settings(max_examples=50, deadline=None)
@given(
    st.lists(rationals, min_size=1, max_size=4),
    st.lists(rationals, min_size=0, max_size=3),
    st.lists(rationals, min_size=1, max_size=9),
)
def test_denominator_undoes_inverse(num, den_tail, f):
    # Q(D) [P(D)/Q(D) f] == P(D) f, checked with polynomial operators only
    rf = op(num, [1, *den_tail])
    f = Poly(f)
    g = apply_operator(rf, f)
    assert poly_op(rf.denominator, g) == poly_op(rf.numerator, f)


def test_pade_appell_examples():
    h = FamilyId("hermite1", -1)
    assert pade_appell(h, 1, 1, 1).value == Poly([-1, 1])
    assert pade_appell(FamilyId("he"), 1, 1, 6).value == Poly([F(-45, 2), 0, 45, 0, -15, 0, 1])
    assert pade_appell(FamilyId("he"), 3, 2, 11).value == exact_polynomial(FamilyId("he"), 11)
    assert pade_appell(FamilyId("he"), 3, 2, 12).value != exact_polynomial(FamilyId("he"), 12)


def test_pade_appell_propagates_defect():
    with pytest.raises(PadeDefect):
        pade_appell(FamilyId("euler"), 2, 1, 4)


def test_closed_form_examples():
    assert closed_form("hermite1_pade11", 2) == Poly([1, -2, 1])
    assert closed_form("he_pade11", 4) == Poly([3, 0, -6, 0, 1])
    assert closed_form("he_pade02", 3) == Poly([0, -3, 0, 1])
    assert closed_form("euler_pade21", 2) == Poly([0, -1, 1])
    assert closed_form("euler_pade21", 3) == Poly([0, 0, F(-3, 2), 1])


def test_closed_form_unknown_id():
    with pytest.raises(KeyError):
        closed_form("nope", 3)


@pytest.mark.parametrize("tid", sorted(CLOSED_FORMS))
def test_closed_forms_match_operator_route(tid):
    for n in range(13):
        assert closed_form(tid, n) == operator_route(tid, n), (tid, n)


def test_euler_21_printed_last_term_must_be_first_order():
    # the order-two e_{n-2}^{(2)} reading disagrees with the operator at n = 3
    from padeappell.families import trunc_exp2_poly

    y = F(-1, 12)
    n = 3
    literal = (
        trunc_exp_poly(n, y)
        - trunc_exp_poly(n - 1, y).scale(F(5 * n, 12))
        - trunc_exp2_poly(n - 2, y).scale(F(n * (n - 1), 24))
    )
    assert literal != apply_operator(as_operator(EULER_21_PRINTED), Poly.monomial(n))


def test_monomiality_trunc_exp():
    mono = monomiality_operators(rational_amplitude(FamilyId("trunc_exp", 1)))
    e = lambda n: exact_polynomial(FamilyId("trunc_exp", 1), n)
    assert mono.multiplicative(e(1)) == Poly([2, 2, 1])
    assert mono.derivative(e(3)) == e(2).scale(3)
    for n in range(11):
        assert mono.multiplicative(mono.derivative(e(n))) == e(n).scale(n)
        assert mono.multiplicative(e(n)) == e(n + 1)


def test_hermite_pade11_multiplicative_operator():
    mono = monomiality_operators(pade_operator(FamilyId("hermite1", -1), 1, 1))
    assert mono.log_derivative.same_form(op([-1], [1, 0, F(-1, 4)]))
    z = lambda n: pade_appell(FamilyId("hermite1", -1), 1, 1, n).value
    for n in range(11):
        assert mono.multiplicative(z(n)) == z(n + 1)
        assert mono.multiplicative(mono.derivative(z(n))) == z(n).scale(n)


def test_monomiality_needs_unit_numerator():
    with pytest.raises(UnsupportedFamily):
        monomiality_operators(op([0, 1], [1]))


@pytest.mark.parametrize("n", range(9))
def test_commutator_identity(n):
    for amp in (rational_amplitude(FamilyId("trunc_exp2", F(2, 3))), pade_operator(FamilyId("he"), 3, 2)):
        a_n = apply_operator(amp, Poly.monomial(n))
        assert commutator_identity_residual(amp, a_n, n).is_zero()


def test_ode_examples():
    assert ode_residual("trunc_exp", 2).is_zero()
    assert ode_residual("hermite1_pade11", 2).is_zero()
    assert ode_residual("trunc_exp2", 2, F(1, 3)).is_zero()


@pytest.mark.parametrize("n", range(11))
def test_ode_residuals_vanish(n):
    assert ode_residual("trunc_exp", n).is_zero()
    assert ode_residual("hermite1_pade11", n).is_zero()
    for y in (1, F(1, 3), F(-1, 4)):
        assert ode_residual("trunc_exp2", n, y).is_zero()


def test_ode_residual_detects_wrong_polynomial():
    # sanity: the third-order operator does not annihilate the exact H_3(x,-1)
    z = exact_polynomial(FamilyId("hermite1", -1), 3)
    n = 3
    res = X * z.derivative(3) + z.derivative(2).scale(2 - n) + (Poly([1, -1]) * z.derivative()).scale(4) + z.scale(4 * n)
    assert not res.is_zero()


def test_ode_unknown():
    with pytest.raises(KeyError):
        ode_residual("nope", 2)


# y-identities, checked against sympy differentiation
x_s, y_s = sp.symbols("x y")


def sympy_family(kind, n):
    if kind == "trunc_exp":
        return sum(sp.factorial(n) / sp.factorial(n - r) * x_s ** (n - r) * y_s**r for r in range(n + 1))
    if kind == "hermite1":
        return (x_s + y_s) ** n
    raise KeyError(kind)


def to_sympy(b: BiPoly):
    return sum(sp.Rational(v.numerator, v.denominator) * x_s**i * y_s**j for (i, j), v in b.terms.items())


@pytest.mark.parametrize("kind", ["trunc_exp", "hermite1"])
@pytest.mark.parametrize("n", range(8))
def test_symbolic_family_matches_sympy(kind, n):
    assert sp.expand(to_sympy(symbolic_family(kind, n)) - sympy_family(kind, n)) == 0


def test_y_recurrence_example():
    # d/dy e_2 = 2x + 4y
    dy = symbolic_family("trunc_exp", 2).dy()
    assert sp.expand(to_sympy(dy) - (2 * x_s + 4 * y_s)) == 0
    assert structural_identities("y_recurrence", "trunc_exp", 2).is_zero()


@pytest.mark.parametrize("n", range(11))
def test_y_identities(n):
    assert structural_identities("y_recurrence", "trunc_exp", n).is_zero()
    for fam in ("hermite1", "trunc_exp"):
        assert structural_identities("homogeneity", fam, n).is_zero()
    for y in (F(1, 2), 1, 2):
        assert structural_identities("y_evolution", "trunc_exp", n, y).is_zero()


def test_y_evolution_heat_equation_for_hermite2():
    for n in range(9):
        assert structural_identities("y_evolution", "hermite2", n).is_zero()
        assert structural_identities("y_evolution", "trunc_exp2", n, F(1, 3)).is_zero()


def test_structural_rejects_other_families():
    with pytest.raises(UnsupportedFamily):
        structural_identities("homogeneity", "euler", 3)
    with pytest.raises(UnsupportedFamily):
        structural_identities("y_recurrence", "hermite1", 3)
