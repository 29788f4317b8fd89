import math
from dataclasses import replace

import numpy as np
import pytest
from scipy.special import gamma as Gamma

from hermlift.chartools import kronecker
from hermlift.eigenforms import InsufficientCoefficients
from hermlift.lvalue import (AfeConfig, central_value, choose_terms, completed_value,
                             dirichlet_L1, functional_equation_residual, gamma_factor,
                             kernel_bound, rankin_coefficients, root_number, smoothing_kernel)
from oracles import power_series_inverse_product, quadratic_roots

L_HALF = {
    3: 0.56063396812989843884 - 0.06268078316169517780j,
    15: 0.29174061425112916542 - 0.32854685912670898365j,
}


@pytest.fixture(scope="module")
def series3(f3, delta):
    return rankin_coefficients(f3, delta, f3.n_max)


@pytest.fixture(scope="module")
def series15(f15, delta):
    return rankin_coefficients(f15, delta, f15.n_max)


@pytest.fixture(scope="module")
def both(f3, f15, series3, series15):
    return [(f3, series3), (f15, series15)]


def _euler_coefficients(f, g, p, kmax):
    """b(p^j), j <= kmax, from the local factor prod 1/(1 - alpha_i beta_j X)."""
    k = f.kappa
    chi = kronecker(f.D, p)
    t = f.a(p) / p**k
    alphas = quadratic_roots(t, chi) if chi else (t,)
    betas = quadratic_roots(g.a(p) / p ** (k + 0.5), 1.0)
    return power_series_inverse_product([a * b for a in alphas for b in betas], kmax)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_coefficients_match_euler_factors(both, delta, p):
    kmax = int(math.log(16, p) + 1e-9)
    for f, series in both:
        euler = _euler_coefficients(f, delta, p, kmax)
        for j in range(1, kmax + 1):
            assert abs(series.b[p**j] - euler[j]) < 1e-12, (f.D, p, j)


def test_coefficients_multiplicative_and_bounded(series15):
    b = series15.b
    for m in range(2, 40):
        for n in range(2, 40):
            if math.gcd(m, n) == 1:
                assert abs(b[m * n] - b[m] * b[n]) < 1e-12
    d = np.zeros(len(b))
    for k in range(1, len(b)):
        d[k::k] += 1
    assert np.all(np.abs(b[1:]) <= d[1:] ** 3 + 1e-12)


def test_rankin_needs_matching_weight(f3):
    from hermlift.eigenforms import level1_eigenform

    with pytest.raises(ValueError):
        rankin_coefficients(f3, level1_eigenform(16, 100), 100)
    with pytest.raises(InsufficientCoefficients):
        rankin_coefficients(f3, level1_eigenform(12, 100), 200)


def test_gamma_factor_closed_form():
    for s in [0.5, 0.7, 1.3, 2.0]:
        want = 4 * (2 * math.pi) ** (-(2 * s + 11)) * Gamma(s + 0.5) * Gamma(s + 10.5)
        assert abs(gamma_factor(5, s) - want) <= 1e-13 * want


def test_root_number(f3, f15):
    for f in (f3, f15):
        w = root_number(f)
        assert abs(abs(w) - 1) < 1e-15
        assert abs(w - (-(f.D**10) / f.a(f.D) ** 2)) < 1e-10


@pytest.mark.parametrize("D", [3, 15])
def test_central_values(D, both):
    f, series = both[0] if D == 3 else both[1]
    r = central_value(series, f)
    assert abs(r.value - L_HALF[D]) < 1e-12
    assert abs(r.value - L_HALF[D]) <= r.error + 1e-14
    assert r.error < 1e-10 and r.residual < 1e-10
    assert r.n_terms <= 50 * D + 100


@pytest.mark.parametrize("idx", [0, 1])
def test_afe_parameter_independence(both, idx):
    f, series = both[idx]
    ref = central_value(series, f).value
    for c in (1.2, 1.5, 2.0):
        for h, T in ((0.1, None), (0.07, 50.0)):
            v = central_value(series, f, AfeConfig(c=c, h=h, T=T)).value
            assert abs(v - ref) <= 1e-9 * abs(ref)


@pytest.mark.parametrize("idx", [0, 1])
def test_functional_equation_residual(both, idx):
    f, series = both[idx]
    w = root_number(f)
    for s in (0.6, 0.9, 0.7 + 0.3j):
        assert functional_equation_residual(series, w, s) < 1e-8
    assert functional_equation_residual(series, -w, 0.6) > 1e-3


def test_completed_value_symmetry_at_centre(f3, series3):
    # Lam(1/2) = w conj(Lam(1/2)) since Lam~ has conjugate coefficients
    w = root_number(f3)
    lam = completed_value(series3, w, 0.5, AfeConfig())
    assert abs(lam - w * lam.conjugate()) < 1e-12 * abs(lam)


def test_conjugate_form_gives_conjugate_value(f15, delta):
    g = f15.conjugate()
    r = central_value(rankin_coefficients(g, delta, g.n_max), g)
    assert abs(r.value - L_HALF[15].conjugate()) < 1e-12


def test_plain_gaussian_regulator_needs_more_terms(f3, series3):
    cfg = AfeConfig(width=1.0)
    with pytest.raises(InsufficientCoefficients):
        central_value(series3, f3, cfg)
    r = central_value(series3, f3, replace(cfg, n_terms=800))
    assert abs(r.value - L_HALF[3]) <= r.error


def test_kernel_bound_dominates(series3):
    cfg = AfeConfig()
    x = np.geomspace(0.3, 200, 40)
    for s, beta in ((0.5, 0.0), (0.5, 0.5)):
        got = np.abs(smoothing_kernel(5, s, x, cfg, beta))
        assert np.all(got <= kernel_bound(5, s, x, cfg, beta) + 1e-20)  # roundoff floor


def test_choose_terms_explicit(series3):
    N, tail = choose_terms(series3, AfeConfig(n_terms=60))
    assert N == 60 and tail > 0
    with pytest.raises(InsufficientCoefficients):
        choose_terms(series3, AfeConfig(n_terms=10**4))


def test_dirichlet_L1_values():
    assert abs(dirichlet_L1(3) - math.pi / (3 * math.sqrt(3))) < 1e-15
    assert abs(dirichlet_L1(3, "series") - math.pi / (3 * math.sqrt(3))) < 1e-14
    assert abs(dirichlet_L1(4, "series") - math.pi / 4) < 1e-14
    assert abs(dirichlet_L1(15, "series") - 1.6223114703894447) < 1e-14
    with pytest.raises(ValueError):
        dirichlet_L1(3, "euler")


def test_dirichlet_L1_partial_sums():
    # plain partial sums, error O(1/N)
    for D in (3, 15, 23):
        N = 300000
        n = np.arange(1, N + 1)
        chi = np.array([kronecker(D, r) for r in range(D)], dtype=float)[n % D]
        assert abs(math.fsum(chi / n) - dirichlet_L1(D)) < 1e-4
