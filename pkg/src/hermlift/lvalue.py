"""Central value of the Rankin-Selberg L-function L(s, f x g).

Dirichlet coefficients (analytic normalisation, centre s = 1/2):

    b(n) = sum_{d^2 | n} chi(d) a_f(m) a_g(m) m^{-(2k + 1/2)},   m = n / d^2.

With gamma(s) = G_C(s + 1/2) G_C(s + 2k + 1/2), G_C(s) = 2 (2 pi)^{-s} Gamma(s),
the function Lam(s) = D^s gamma(s) L(s) satisfies Lam(s) = w Lam~(1 - s),
where Lam~ has coefficients conj(b(n)) and w = -D^{2k} / a_f(D)^2.

For a regulator W with W(0) = 1 the standard contour shift gives

    Lam(s) = D^s sum b(n) n^{-s} I_s(n/D; W)
             + w D^{1-s} sum conj(b(n)) n^{s-1} I_{1-s}(n/D; W(-.)),
    I_s(x; W) = (1 / 2 pi i) int_{Re u = c} gamma(s + u) x^{-u} W(u) du / u,

with W(u) = exp(u^2 / A + beta u).  The vertical integral is evaluated with
the trapezoidal rule, which converges geometrically for this analytic,
exponentially damped integrand.  A = 1 is the plain e^{u^2} regulator; it
makes I_s(x) decay only like exp(-(log x)^2 / 4), so far more terms are
needed than with a wide Gaussian (default A = 64), where the decay
exp(-4 pi sqrt(x)) of the gamma factor dominates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Optional

import numpy as np
from scipy.special import loggamma, psi

from .chartools import as_disc, kronecker
from .eigenforms import InsufficientCoefficients, Level1Eigenform, NewformSeries
from .quadfield import L1_class_number_formula


@dataclass(frozen=True)
class RankinSeries:
    b: np.ndarray  # b[n], b[0] unused
    kappa: int
    D: int

    @property
    def n_max(self) -> int:
        return len(self.b) - 1

    def dual(self) -> "RankinSeries":
        """Coefficients of L(s, f x g x chi) = conj(L(conj(s), f x g))."""
        return replace(self, b=np.conj(self.b))


@dataclass(frozen=True)
class AfeConfig:
    c: float = 1.5  # abscissa of the vertical line
    h: float = 0.1  # trapezoidal step
    T: Optional[float] = None  # half-length of the truncated line; None = automatic
    width: float = 64.0  # regulator W(u) = exp(u^2 / width + beta u); width=1 is plain e^{u^2}
    beta: float = 0.0
    n_terms: Optional[int] = None  # None = smallest N meeting tol
    tol: float = 1e-12  # absolute target on L(1/2)

    def regulator(self, u, beta: Optional[float] = None):
        """``log W(u)``."""
        beta = self.beta if beta is None else beta
        return u * u / self.width + beta * u


@dataclass
class LCentralReport:
    value: complex
    error: float
    primal_sum: complex
    dual_sum: complex
    root_number: complex
    gamma_half: float
    n_terms: int
    residual: float  # |L(beta) - L(beta')| for a second regulator
    config: AfeConfig = field(default_factory=AfeConfig)


def rankin_coefficients(f: NewformSeries, g: Level1Eigenform, n_max: int) -> RankinSeries:
    if g.weight != 2 * f.kappa + 2:
        raise ValueError(f"weights {f.weight} and {g.weight} do not pair")
    if n_max > f.n_max:
        raise InsufficientCoefficients(n_max, f.n_max)
    if n_max > g.n_max:
        raise InsufficientCoefficients(n_max, g.n_max, "a_g")
    k = f.kappa
    m = np.arange(1, n_max + 1, dtype=float)
    base = np.zeros(n_max + 1, dtype=complex)
    ag = np.array([float(x) for x in g.coeffs[1 : n_max + 1]])
    base[1:] = f.values[1 : n_max + 1] * ag * m ** -(2 * k + 0.5)
    b = np.zeros(n_max + 1, dtype=complex)
    d = 1
    while d * d <= n_max:
        chi = kronecker(f.D, d)
        if chi:
            top = n_max // (d * d)
            b[d * d :: d * d][:top] += chi * base[1 : top + 1]
        d += 1
    return RankinSeries(b, k, f.D)


def gamma_factor(kappa: int, s):
    """``G_C(s + 1/2) G_C(s + 2k + 1/2)``."""
    return np.exp(log_gamma_factor(kappa, s))


def log_gamma_factor(kappa: int, s):
    s = np.asarray(s, dtype=complex)
    two_pi = 2 * math.pi
    a = s + 0.5
    b = s + 2 * kappa + 0.5
    return (2 * math.log(2) - (a + b) * math.log(two_pi) + loggamma(a) + loggamma(b))


def root_number(f: NewformSeries, rtol: float = 1e-8) -> complex:
    """``w = -D^{2k} a_f(D)^{-2}``, renormalised to modulus one."""
    aD = f.a(f.D)
    w = -(f.D ** (2 * f.kappa)) / aD**2
    if abs(abs(w) - 1) > rtol:
        raise ArithmeticError(f"root number has modulus {abs(w)!r}, expected 1")
    return w / abs(w)


def _log_integrand(kappa: int, s: complex, u, cfg: AfeConfig, beta: float):
    return log_gamma_factor(kappa, s + u) + cfg.regulator(u, beta) - np.log(u)


def half_length(cfg: AfeConfig, kappa: int, s: complex, beta: float, c: Optional[float] = None,
                digits: float = 46.0) -> float:
    """Smallest ``T`` beyond which the integrand is below ``e^{-digits}`` of its peak."""
    if cfg.T is not None:
        return cfg.T
    c = cfg.c if c is None else c
    peak = float(np.max(_log_integrand(kappa, s, c + 1j * np.linspace(-5, 5, 101), cfg, beta).real))
    T = 5.0
    while float(_log_integrand(kappa, s, c + 1j * T, cfg, beta).real) > peak - digits:
        T += 1.0
        if T > 1e4:  # pragma: no cover
            raise ArithmeticError("vertical integrand does not decay")
    return T


def _line(cfg: AfeConfig, kappa: int, s: complex, beta: float, step: int):
    T = half_length(cfg, kappa, s, beta)
    h = cfg.h * step
    M = int(math.ceil(T / h))
    u = cfg.c + 1j * h * np.arange(-M, M + 1)
    return u, h


def smoothing_kernel(kappa: int, s: complex, x: np.ndarray, cfg: AfeConfig,
                     beta: Optional[float] = None, step: int = 1) -> np.ndarray:
    """``I_s(x)`` on the array ``x`` (trapezoid with ``step * h``)."""
    beta = cfg.beta if beta is None else beta
    u, h = _line(cfg, kappa, s, beta, step)
    G = np.exp(_log_integrand(kappa, s, u, cfg, beta)) * (h / (2 * math.pi))
    logx = np.log(np.asarray(x, dtype=float))
    out = np.exp(-np.outer(logx, u)) @ G
    return out.real if np.imag(s) == 0 else out


def kernel_bound(kappa: int, s: float, x: np.ndarray, cfg: AfeConfig, beta: float) -> np.ndarray:
    """Upper bound for ``|I_s(x)|`` by moving the line to ``Re u = c'``."""
    logx = np.log(np.asarray(x, dtype=float))
    best = np.full(logx.shape, np.inf)
    for cp in np.arange(0.5, 60.0, 0.5):
        T = half_length(cfg, kappa, s, beta, c=cp, digits=40.0)
        t = np.arange(-T, T + 1e-12, 0.05)
        logi = _log_integrand(kappa, s, cp + 1j * t, cfg, beta).real
        top = float(logi.max())
        logM = top + math.log(float(np.sum(np.exp(logi - top))) * 0.05 / (2 * math.pi) * 1.01)
        best = np.minimum(best, logM - cp * logx)
    return np.exp(best)


@lru_cache(maxsize=8)
def _d3_bound(n_max: int) -> np.ndarray:
    d = np.zeros(n_max + 1)
    for k in range(1, n_max + 1):
        d[k::k] += 1
    out = d**3  # d_4(n) <= d(n)^3 bounds |b(n)|
    out.flags.writeable = False
    return out


def completed_sums(series: RankinSeries, s: complex, cfg: AfeConfig, *, beta: float,
                   N: int, step: int = 1):
    """Primal and dual sums of the smoothed functional equation at ``s``."""
    n = np.arange(1, N + 1, dtype=float)
    x = n / series.D
    k = series.kappa
    b = series.b[1 : N + 1]
    I1 = smoothing_kernel(k, s, x, cfg, beta, step)
    I2 = smoothing_kernel(k, 1 - s, x, cfg, -beta, step)
    primal = np.sum(b * n ** (-s) * I1)
    dual = np.sum(np.conj(b) * n ** (s - 1) * I2)
    return primal, dual


def tail_profile(series: RankinSeries, cfg: AfeConfig, s: float = 0.5) -> np.ndarray:
    """``tails[N]``: bound for the error on ``L(s)`` from dropping all ``n > N``.

    Uses ``|b(n)| <= d(n)^3`` and :func:`kernel_bound` for both sums, summed
    up to ``4 * n_max``; the kernels decay like ``exp(-4 pi sqrt(n/D))`` so the
    remainder beyond that range is far below the bound at ``n_max``.
    """
    D, k = series.D, series.kappa
    big = max(4 * series.n_max, 4000)
    n = np.arange(1, big + 1, dtype=float)
    bound = _d3_bound(big)[1:] * n**-0.5 * (
        kernel_bound(k, s, n / D, cfg, cfg.beta) + kernel_bound(k, 1 - s, n / D, cfg, -cfg.beta)
    )
    scale = float(np.abs(gamma_factor(k, s)))
    return np.append(np.cumsum(bound[::-1])[::-1], 0.0)[: series.n_max + 1] / scale


def _first_below(tails: np.ndarray, tol: float, n_max: int) -> int:
    ok = np.nonzero(tails < tol)[0]
    if not ok.size:
        raise InsufficientCoefficients(n_max + 1, n_max, "b")
    return max(int(ok[0]), 1)


def choose_terms(series: RankinSeries, cfg: AfeConfig, s: float = 0.5) -> tuple[int, float]:
    """Smallest ``N`` whose truncation tail bound (on ``L(s)``) is below ``tol``."""
    if cfg.n_terms is not None and cfg.n_terms > series.n_max:
        raise InsufficientCoefficients(cfg.n_terms, series.n_max, "b")
    tails = tail_profile(series, cfg, s)
    N = cfg.n_terms if cfg.n_terms is not None else _first_below(tails, cfg.tol, series.n_max)
    return N, float(tails[N])


def lvalue_at(series: RankinSeries, w: complex, s: complex, cfg: AfeConfig,
              beta: Optional[float] = None, N: Optional[int] = None):
    """``L(s)`` via the smoothed functional equation; returns (value, primal, dual, N)."""
    beta = cfg.beta if beta is None else beta
    if N is None:
        N, _ = choose_terms(series, cfg, float(np.real(s)))
    primal, dual = completed_sums(series, s, cfg, beta=beta, N=N)
    D = series.D
    num = primal + w * D ** (1 - 2 * s) * dual
    return complex(num / gamma_factor(series.kappa, s)), complex(primal), complex(dual), N


def completed_value(series: RankinSeries, w: complex, s: complex, cfg: AfeConfig,
                    beta: Optional[float] = None, N: Optional[int] = None) -> complex:
    """``Lam(s) = D^s gamma(s) L(s)``."""
    val, _, _, _ = lvalue_at(series, w, s, cfg, beta, N)
    return complex(val * series.D**s * gamma_factor(series.kappa, s))


def central_value(series: RankinSeries, f: NewformSeries, cfg: Optional[AfeConfig] = None,
                  *, check_beta: float = 0.5) -> LCentralReport:
    cfg = cfg or AfeConfig()
    if series.D != f.D or series.kappa != f.kappa:
        raise ValueError("series and f do not match")
    w = root_number(f)
    tails = tail_profile(series, cfg)
    if cfg.n_terms is not None:
        N, _ = choose_terms(series, cfg)
    else:
        shifted = tail_profile(series, replace(cfg, beta=cfg.beta + check_beta))
        N = max(_first_below(tails, cfg.tol, series.n_max),
                _first_below(shifted, cfg.tol, series.n_max))
    tail = float(tails[N])
    value, primal, dual, _ = lvalue_at(series, w, 0.5, cfg, N=N)
    # quadrature error: compare against the rule with twice the step
    p2, d2 = completed_sums(series, 0.5, cfg, beta=cfg.beta, N=N, step=2)
    g_half = float(gamma_factor(series.kappa, 0.5).real)
    coarse = (p2 + w * d2) / g_half
    quad_err = abs(coarse - value)
    other, _, _, _ = lvalue_at(series, w, 0.5, cfg, beta=cfg.beta + check_beta, N=N)
    residual = abs(other - value)
    err = tail + quad_err + 1e-15 * N * (abs(primal) + abs(dual)) / g_half
    return LCentralReport(value, err, primal, dual, w, g_half, N, residual, cfg)


def functional_equation_residual(series: RankinSeries, w: complex, s: complex,
                                 cfg: Optional[AfeConfig] = None,
                                 betas: tuple[float, float] = (0.3, -0.2)) -> float:
    """Relative size of ``Lam(s) - w Lam~(1 - s)``, each side with its own regulator."""
    cfg = cfg or AfeConfig()
    lhs = completed_value(series, w, s, cfg, beta=betas[0])
    rhs = w * completed_value(series.dual(), np.conj(w), 1 - s, cfg, beta=betas[1])
    return abs(lhs - rhs) / abs(lhs)


def dirichlet_L1(D, method: str = "formula") -> float:
    """``L(1, chi)`` by the class number formula or by series resummation.

    The series method groups ``sum chi(n)/n`` by residue classes mod D,
    which gives ``-(1/D) sum_{r=1}^{D} chi(r) psi(r/D)`` (the divergent
    parts cancel since the character sums to zero).
    """
    d = as_disc(D)
    if method == "formula":
        return L1_class_number_formula(d)
    if method == "series":
        r = np.arange(1, d.D + 1)
        chi = np.array([kronecker(d, int(x)) for x in r], dtype=float)
        terms = chi * psi(r / d.D)
        return float(-math.fsum(terms) / d.D)
    raise ValueError(f"unknown method {method!r}")
