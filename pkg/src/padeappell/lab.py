"""Floating-point grids, error metrics, J0 reference and figure CSV emission."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .exact_algebra import Poly, PowerSeries, RationalFunction, eval_exact
from .families import FamilyId, exact_polynomial
from .operators import pade_appell
from .pade import AmplitudeSpec, maclaurin, pade_of_amplitude
from .umbral import bessel_pade_series

J0_WINDOW = 12.0
# enough terms for the Bessel approximant series to converge in double precision on |x| <= 8
FIGURE_BESSEL_TERMS = 64


class PoleError(ArithmeticError):
    def __init__(self, where: str):
        super().__init__(f"denominator vanishes {where}")
        self.where = where


class GridMismatch(ValueError):
    pass


@dataclass(frozen=True)
class GridSpec:
    xmin: float
    xmax: float
    points: int

    def __post_init__(self):
        if not self.xmin < self.xmax:
            raise ValueError(f"need xmin < xmax, got {self.xmin} >= {self.xmax}")
        if self.points < 2:
            raise ValueError("a grid needs at least 2 points")

    def abscissae(self) -> np.ndarray:
        return np.linspace(self.xmin, self.xmax, self.points)


def _horner(coeffs: Sequence[Fraction], xs: np.ndarray) -> np.ndarray:
    acc = np.zeros_like(xs, dtype=float)
    for c in reversed(coeffs):
        acc = acc * xs + float(c)
    return acc


def _check_poles(den: Poly, xs: np.ndarray) -> None:
    vals = [eval_exact(den, Fraction(float(x))) for x in xs]
    for x, v in zip(xs, vals):
        if v == 0:
            raise PoleError(f"at x = {float(x)!r}")
    for (x0, v0), (x1, v1) in zip(zip(xs, vals), zip(xs[1:], vals[1:])):
        if (v0 > 0) != (v1 > 0):
            raise PoleError(f"between x = {float(x0)!r} and x = {float(x1)!r}")


def evaluate(obj, xs) -> np.ndarray:
    """Double-precision values of a Poly, PowerSeries, RationalFunction or float callable."""
    xs = np.asarray(xs, dtype=float)
    if isinstance(obj, (Poly, PowerSeries)):
        return _horner(obj.coeffs, xs)
    if isinstance(obj, RationalFunction):
        _check_poles(obj.denominator, xs)
        return _horner(obj.numerator.coeffs, xs) / _horner(obj.denominator.coeffs, xs)
    if callable(obj):
        return np.array([obj(float(x)) for x in xs], dtype=float)
    raise TypeError(f"cannot evaluate {type(obj).__name__}")


def eval_grid(obj, grid: GridSpec) -> list[tuple[float, float]]:
    xs = grid.abscissae()
    return list(zip(xs.tolist(), evaluate(obj, xs).tolist()))


def reference_j0(x: float) -> float:
    """J0 from its power series, summed until the next term drops below 1e-16."""
    if not abs(x) <= J0_WINDOW:
        raise ValueError(f"reference_j0 is only valid for |x| <= {J0_WINDOW}, got {x}")
    q = -(x * x) / 4.0
    term = 1.0
    terms = [term]
    r = 0
    while True:
        r += 1
        term *= q / (r * r)
        terms.append(term)
        if abs(term) < 1e-16 and r > abs(q):
            break
    return math.fsum(terms)


def sup_error(a, b) -> float:
    """max |a_i - b_i| over two evaluated series on the same grid.

    Accepts sequences of (x, y) pairs or plain value arrays.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise GridMismatch(f"shapes differ: {a.shape} vs {b.shape}")
    if a.ndim == 2:
        if not np.array_equal(a[:, 0], b[:, 0]):
            raise GridMismatch("abscissae differ")
        a, b = a[:, 1], b[:, 1]
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - b)))


# ---------------------------------------------------------------------------
# figures

DEFAULT_GRIDS = {
    "1": GridSpec(0.0, 4.0, 201),
    "2": GridSpec(-3.0, 3.0, 241),
    "3": GridSpec(-2.0, 2.0, 201),
    "4": GridSpec(-4.0, 4.0, 321),
    "5": GridSpec(0.0, 8.0, 321),
}

HERMITE1 = FamilyId("hermite1", -1)
HE = FamilyId("he")


def _exp_neg_columns(order: int, pades) -> list[tuple[str, Callable]]:
    exp_neg = AmplitudeSpec("exp_neg")
    cols = [("exact", lambda: (lambda x: math.exp(-x)))]
    for m, n in pades:
        cols.append((f"pade_{m}_{n}", lambda m=m, n=n: pade_of_amplitude(exp_neg, m, n).value))
    cols.append((f"maclaurin_{order}", lambda: maclaurin(exp_neg, order).to_poly()))
    return cols


def _family_columns(family: FamilyId, index: int, m: int, n: int):
    return [
        ("exact", lambda: exact_polynomial(family, index)),
        (f"pade_{m}_{n}", lambda: pade_appell(family, m, n, index).value),
    ]


def _bessel_columns(*ks: int):
    cols = [("exact", lambda: reference_j0)]
    for k in ks:
        cols.append((f"pade_0_{k}", lambda k=k: bessel_pade_series(k, FIGURE_BESSEL_TERMS)))
    return cols


@dataclass(frozen=True)
class FigureJob:
    id: str
    columns: tuple

    @property
    def labels(self) -> list[str]:
        return [label for label, _ in self.columns]

    @property
    def default_grid(self) -> GridSpec:
        return DEFAULT_GRIDS[self.id[0]]


def _build_figures() -> dict[str, FigureJob]:
    figs = {
        "1a": _exp_neg_columns(2, [(0, 2), (1, 1)]),
        "1b": _exp_neg_columns(3, [(0, 3)]),
        "2a": _family_columns(HERMITE1, 1, 1, 1),
        "2b": _family_columns(HERMITE1, 2, 1, 1),
        "2c": _family_columns(HERMITE1, 3, 1, 1),
        "2d": _family_columns(HERMITE1, 3, 2, 1),
        "4a": _family_columns(HE, 11, 3, 2),
        "4b": _family_columns(HE, 12, 3, 2),
        "5a": _bessel_columns(2, 3),
        "5b": _bessel_columns(2, 4),
    }
    for i, letter in enumerate("abcdef"):
        figs[f"3{letter}"] = _family_columns(HE, i + 2, 1, 1)
    return {k: FigureJob(k, tuple(v)) for k, v in sorted(figs.items())}


FIGURES = _build_figures()


def figure_table(job: FigureJob | str, grid: GridSpec | None = None):
    """(labels, xs, [column arrays]) for a figure."""
    if isinstance(job, str):
        try:
            job = FIGURES[job]
        except KeyError:
            raise KeyError(f"unknown figure {job!r}; known: {', '.join(FIGURES)}") from None
    grid = grid or job.default_grid
    xs = grid.abscissae()
    cols = [evaluate(make(), xs) for _, make in job.columns]
    return job.labels, xs, cols


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def figure_emit(job: FigureJob | str, grid: GridSpec | None = None, fmt: str = "csv") -> str:
    """Figure data as CSV (``x,<labels...>``) or a JSON array of row objects."""
    labels, xs, cols = figure_table(job, grid)
    if fmt == "json":
        rows = [
            {"x": float(x), **{lab: float(c[i]) for lab, c in zip(labels, cols)}}
            for i, x in enumerate(xs)
        ]
        return json.dumps(rows, indent=1) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", *labels])
    for i, x in enumerate(xs):
        w.writerow([_fmt(x), *(_fmt(c[i]) for c in cols)])
    return buf.getvalue()
