"""Exact Padé approximants of Appell amplitudes and the polynomial families they generate."""

from .exact_algebra import Poly, PowerSeries, RationalFunction, series_invert, series_substitute
from .families import FamilyId, bernoulli_number, chebyshev_u, exact_polynomial
from .operators import apply_operator, closed_form, pade_appell
from .pade import AmplitudeSpec, PadeDefect, agreement_order, maclaurin, pade_of_amplitude, solve_pade

__all__ = [
    "AmplitudeSpec",
    "FamilyId",
    "PadeDefect",
    "Poly",
    "PowerSeries",
    "RationalFunction",
    "agreement_order",
    "apply_operator",
    "bernoulli_number",
    "chebyshev_u",
    "closed_form",
    "exact_polynomial",
    "maclaurin",
    "pade_appell",
    "pade_of_amplitude",
    "series_invert",
    "series_substitute",
    "solve_pade",
]
