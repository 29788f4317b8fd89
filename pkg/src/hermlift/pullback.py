"""Restriction of F_c to the diagonal and the period side of the identity.

Because S_{2k+2}(SL_2(Z)) is one-dimensional for the supported weights,

    F_c(diag(z1, C z2)) = c0 * g(z1) g(z2),

so the normalised period <F_c|, g x g_C> / (<g,g> <g_C,g_C>) equals the
q1 q2 coefficient c0 = c(1, 1) of the restriction, which is a finite sum of
lift coefficients over lattice points with Q(x, y) < D.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np
from numpy.polynomial.legendre import leggauss

from .eigenforms import LEVEL1_WEIGHTS, Level1Eigenform, NewformSeries
from .maasslift import HermitianIndex, LiftTable, lift_coefficient
from .quadfield import ClassGroup, IdealClassRep, L1_class_number_formula


def enumerate_lattice_points(rep: IdealClassRep, bound: int) -> list[tuple[int, int]]:
    """All ``(x, y)`` with ``Q(x, y) < bound`` for the representative's form ``Q``."""
    a, b, c = rep.form
    D = rep.D
    out = []
    # Q(x,y) = a (x + b y / 2a)^2 + D y^2 / 4a
    ymax = math.isqrt(max(4 * a * bound // D, 0)) + 1
    for y in range(-ymax, ymax + 1):
        rem = Fraction(bound) - Fraction(D * y * y, 4 * a)
        if rem <= 0:
            continue
        w = math.isqrt(int(rem / a)) + 2
        centre = -b * y // (2 * a)
        for x in range(centre - w, centre + w + 1):
            if rep.form(x, y) < bound:
                out.append((x, y))
    return sorted(out)


def enumerate_pullback_points(rep: IdealClassRep) -> list[tuple[int, int]]:
    """Lattice points with ``N(alpha) < 1/C``, i.e. ``Q(x, y) < D``."""
    return enumerate_lattice_points(rep, rep.D)


@dataclass
class PullbackSum:
    rep: IdealClassRep
    c0: object
    term_count: int
    terms: list = field(default_factory=list)  # (N_H, multiplicity)


def _check_weight(table: LiftTable, g: Optional[Level1Eigenform]) -> None:
    w = 2 * table.f.kappa + 2
    if g is not None and g.weight != w:
        raise ValueError(f"g has weight {g.weight}, lift has weight {w}")
    if w not in LEVEL1_WEIGHTS:
        raise ValueError(f"dim S_{w}(SL_2(Z)) > 1: period ratio needs an eigen-projection")


def double_coefficient(table: LiftTable, n: int, m: int):
    """Coefficient of ``q1^n q2^m`` in ``F_c(diag(z1, C z2))``."""
    if n < 1 or m < 1:
        raise ValueError("n, m must be positive")
    total = 0
    for x, y in enumerate_lattice_points(table.rep, n * m * table.D):
        total = total + lift_coefficient(table, HermitianIndex(n, m, x, y, table.rep))
    return total


def pullback_c0(table: LiftTable, g: Optional[Level1Eigenform] = None) -> PullbackSum:
    _check_weight(table, g)
    pts = enumerate_pullback_points(table.rep)
    counts: dict[int, int] = {}
    total = 0
    for x, y in pts:
        H = HermitianIndex(1, 1, x, y, table.rep)
        counts[H.N_H] = counts.get(H.N_H, 0) + 1
        total = total + lift_coefficient(table, H)
    return PullbackSum(table.rep, total, len(pts), sorted(counts.items(), reverse=True))


# ---------------------------------------------------------------------------
# Petersson norm


@dataclass(frozen=True)
class PeterssonNorm:
    value: float
    error: float
    upper: float  # part of the fundamental domain with y > 1
    strip: float  # part between the unit circle and y = 1
    nodes: int

    def __float__(self) -> float:
        return self.value


def _upper_incomplete_gamma_int(s: int, x: float) -> float:
    """``Gamma(s, x)`` for integer ``s >= 1``: (s-1)! e^{-x} sum_{j<s} x^j / j!."""
    term, acc = 1.0, 1.0
    for j in range(1, s):
        term *= x / j
        acc += term
    return math.factorial(s - 1) * math.exp(-x) * acc


def _coefficient_bound(n: np.ndarray, weight: int) -> np.ndarray:
    # |a(n)| <= d(n) n^{(k-1)/2} <= 2 sqrt(n) n^{(k-1)/2}
    return 2 * np.sqrt(n) * n ** ((weight - 1) / 2)


def _strip_integral(coeffs: np.ndarray, kappa: int, nodes: int) -> float:
    """Integral of ``|g|^2 y^{2k}`` over ``|x| <= 1/2, sqrt(1-x^2) <= y <= 1``."""
    t, w = leggauss(nodes)
    xs = 0.25 * (t + 1)  # [0, 1/2]; integrand is even in x
    wx = 0.25 * w
    ns = np.arange(1, len(coeffs))
    a = coeffs[1:]
    total = 0.0
    for x, wxi in zip(xs, wx):
        lo = math.sqrt(1 - x * x)
        ys = lo + (1 - lo) * 0.5 * (t + 1)
        wy = (1 - lo) * 0.5 * w
        z = x + 1j * ys[:, None]
        gz = (a * np.exp(2j * math.pi * ns * z)).sum(axis=1)
        total += wxi * float(np.sum(wy * np.abs(gz) ** 2 * ys ** (2 * kappa)))
    return 2 * total


def petersson_norm(g: Level1Eigenform, tol: float = 1e-13) -> PeterssonNorm:
    """``<g, g>`` over SL_2(Z)\\H with measure ``y^{2k} dx dy``; ``tol`` is relative."""
    if tol < 1e-15:
        raise ValueError("tol below double precision")
    k = g.kappa
    s = 2 * k + 1
    coeffs = g.as_float()
    # y > 1: exact termwise integration
    upper = 0.0
    terms = []
    for n in range(1, g.n_max + 1):
        x = 4 * math.pi * n
        t = coeffs[n] ** 2 * _upper_incomplete_gamma_int(s, x) / x**s
        terms.append(t)
        if n > 2 and t < 1e-18 * upper:
            break
        upper += t
    else:
        raise ValueError("upper-region series did not converge with available a_g(n)")
    # strip y >= sqrt(3)/2: truncate the q-series where the tail bound is negligible
    ymin = math.sqrt(3) / 2
    n_all = np.arange(1, g.n_max + 1, dtype=float)
    tail = _coefficient_bound(n_all, g.weight) * np.exp(-2 * math.pi * n_all * ymin)
    gmin = abs(coeffs[1]) * math.exp(-2 * math.pi) * 0.5
    cut = np.nonzero(np.cumsum(tail[::-1])[::-1] < 1e-3 * tol * gmin)[0]
    if cut.size == 0:
        raise ValueError("q-series tail bound not reached with available a_g(n)")
    nterms = int(cut[0]) + 1
    trunc = coeffs[: nterms + 1]
    tail_err = 2 * float(np.sum(tail[nterms:])) / gmin
    nodes = 16
    prev = _strip_integral(trunc, k, nodes)
    while True:
        nodes *= 2
        cur = _strip_integral(trunc, k, nodes)
        err = abs(cur - prev)
        if err <= 0.1 * tol * abs(upper + cur) or nodes >= 512:
            break
        prev = cur
    value = upper + cur
    error = err + tail_err * value + 1e-16 * value
    if error > tol * value:
        raise ArithmeticError(f"Petersson quadrature error {error / value:.2e} exceeds tol")
    return PeterssonNorm(value, error, upper, cur, nodes)


def scaled_petersson(norm: float, C: int, kappa: int) -> float:
    """``<g_C, g_C> = C^{2(k+1)} <g, g>``."""
    return C ** (2 * (kappa + 1)) * float(norm)


# ---------------------------------------------------------------------------
# right-hand side of the main identity


@dataclass
class PeriodSide:
    per_class: list  # [(rep, c0)]
    average: complex  # (1/h_K) sum c0
    prefactor: float  # L(1, chi) (4 pi)^{2k+1} / (2k)!
    petersson: float
    a_f_D: complex
    value: complex  # full right-hand side, comparable with L(1/2, f x g)


def rhs_main_theorem(f: NewformSeries, g: Level1Eigenform, cg: ClassGroup,
                     petersson: Optional[float] = None, exact: bool = False) -> PeriodSide:
    """``L(1,chi)(4pi)^{2k+1} / (a_f(D)(2k)!) * (1/h_K) sum_c <F_c|, g x g_C>/<g_C,g_C>``.

    Uses ``<F_c|, g x g_C> / <g_C, g_C> = c0(c) <g, g>``.
    """
    k = f.kappa
    if petersson is None:
        petersson = petersson_norm(g).value
    per_class = []
    for rep in cg.reps:  # canonical order
        c0 = pullback_c0(LiftTable(f, rep, exact=exact), g).c0
        per_class.append((rep, c0))
    avg = sum(complex(c0) for _, c0 in per_class) / cg.h_K
    pref = L1_class_number_formula(cg.D) * (4 * math.pi) ** (2 * k + 1) / math.factorial(2 * k)
    aD = f.a(f.D)
    return PeriodSide(per_class, avg, pref, float(petersson), aD,
                      pref / aD * avg * float(petersson))
