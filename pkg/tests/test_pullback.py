import math

import numpy as np
import pytest
from scipy.integrate import dblquad

from hermlift.eigenforms import level1_eigenform
from hermlift.exact import QuadElement
from hermlift.maasslift import LiftTable
from hermlift.pullback import (double_coefficient, enumerate_lattice_points, petersson_norm,
                               pullback_c0, rhs_main_theorem, scaled_petersson)

SQRT_M5 = QuadElement(0, 1, 5)
DELTA_NORM = 1.0353620568043209e-6


@pytest.fixture(scope="module")
def t3(f3, cg3):
    return LiftTable(f3, cg3.reps[0], exact=True)


def test_exact_c0(t3):
    res = pullback_c0(t3)
    assert res.c0 == 288 * SQRT_M5
    assert res.c0 == 24 * t3.f.coeff(2, True)
    assert res.term_count == 7
    assert res.terms == [(3, 1), (2, 6)]


def test_example2_c0(f15, cg15):
    got = [complex(pullback_c0(LiftTable(f15, r)).c0) for r in cg15.reps]
    for z, want in zip(got, [-1835447.7607008524j, 3003750.9577573916j]):
        assert abs(z - want) <= 1e-12 * abs(want)


def test_double_coefficients_factor(t3, delta):
    c0 = pullback_c0(t3).c0
    for n in range(1, 4):
        for m in range(1, 4):
            assert double_coefficient(t3, n, m) == delta.a(n) * delta.a(m) * c0


@pytest.mark.parametrize("p", [2, 3])
def test_hecke_symmetry_exact(t3, p):
    c = lambda n, m: double_coefficient(t3, n, m) if n and m else 0  # noqa: E731
    for n in range(1, 4):
        for m in range(1, 4):
            t1 = c(p * n, m) + (p**11 * c(n // p, m) if n % p == 0 else 0)
            t2 = c(n, p * m) + (p**11 * c(n, m // p) if m % p == 0 else 0)
            assert t1 == t2


@pytest.mark.parametrize("p", [2, 3])
def test_hecke_symmetry_numeric(f15, cg15, p):
    t = LiftTable(f15, cg15.reps[1])
    for n, m in [(1, 1), (1, 2), (2, 1), (2, 3)]:
        t1 = double_coefficient(t, p * n, m) + (p**11 * double_coefficient(t, n // p, m)
                                                if n % p == 0 else 0)
        t2 = double_coefficient(t, n, p * m) + (p**11 * double_coefficient(t, n, m // p)
                                                if m % p == 0 else 0)
        assert abs(t1 - t2) <= 1e-12 * abs(t1)


def test_lattice_points_reject_nothing_valid(t3):
    pts = enumerate_lattice_points(t3.rep, 20)
    brute = [(x, y) for x in range(-10, 11) for y in range(-10, 11) if t3.rep.form(x, y) < 20]
    assert pts == sorted(brute)


def test_weight_checks(f3, cg3):
    with pytest.raises(ValueError):
        pullback_c0(LiftTable(f3, cg3.reps[0]), level1_eigenform(16, 10))


def _brute_petersson(g, nterms=40, Y=4.5):
    a = g.as_float()[1 : nterms + 1]
    n = np.arange(1, nterms + 1)
    k = g.kappa

    def integrand(y, x):
        z = x + 1j * y
        return abs(np.sum(a * np.exp(2j * math.pi * n * z))) ** 2 * y ** (2 * k)

    val, _ = dblquad(integrand, -0.5, 0.5, lambda x: math.sqrt(1 - x * x), lambda x: Y,
                     epsabs=0, epsrel=1e-11)
    return val


def test_petersson_delta(delta):
    pn = petersson_norm(delta)
    assert abs(pn.value - DELTA_NORM) <= 1e-12 * DELTA_NORM
    assert pn.error <= 1e-13 * pn.value
    assert abs(pn.value - (pn.upper + pn.strip)) <= 1e-20


def test_petersson_against_direct_quadrature(delta):
    assert abs(_brute_petersson(delta) - petersson_norm(delta).value) <= 1e-8 * DELTA_NORM


def test_petersson_weight16_against_direct_quadrature():
    g = level1_eigenform(16, 60)
    assert abs(_brute_petersson(g) / petersson_norm(g).value - 1) < 1e-8


def test_petersson_needs_coefficients():
    with pytest.raises(ValueError):
        petersson_norm(level1_eigenform(12, 2))
    with pytest.raises(ValueError):
        petersson_norm(level1_eigenform(12, 60), tol=1e-17)


def test_scaling_law():
    assert scaled_petersson(DELTA_NORM, 17, 5) == 17**12 * DELTA_NORM
    assert scaled_petersson(DELTA_NORM, 1, 5) == DELTA_NORM


def test_rhs_main_theorem(f3, f15, cg3, cg15, delta):
    r3 = rhs_main_theorem(f3, delta, cg3, exact=True)
    assert r3.per_class[0][1] == 288 * SQRT_M5
    assert abs(r3.average - 643.9875775199394j) <= 1e-13 * 644
    r15 = rhs_main_theorem(f15, delta, cg15)
    assert abs(r15.average - 584151.5985282696j) <= 1e-12 * 584152
