"""Slow, independent reference implementations used only by the tests."""

import itertools
import math
import numpy as np


def legendre_euler(a, p):
    """Legendre symbol by Euler's criterion."""
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def _strip_squares(x, p):
    while x % (p * p) == 0:
        x //= p * p
    return x


def hilbert_brute(a, b, p):
    """(a, b)_p by searching primitive solutions of z^2 = a x^2 + b y^2 mod p^k."""
    if p == math.inf:
        return -1 if a < 0 and b < 0 else 1
    a, b = _strip_squares(a, p), _strip_squares(b, p)
    k = 3 if p > 2 else 5
    m = p**k
    squares = {}
    for z in range(m):
        squares.setdefault(z * z % m, []).append(z)
    for x, y in itertools.product(range(m), repeat=2):
        v = (a * x * x + b * y * y) % m
        for z in squares.get(v, ()):
            if x % p or y % p or z % p:
                return 1
    return -1


def reduced_form_count(D):
    """Number of reduced primitive forms of discriminant -D (direct search)."""
    h = 0
    for a in range(1, int(math.isqrt(D // 3)) + 2):
        for b in range(-a + 1, a + 1):
            if (b * b + D) % (4 * a):
                continue
            c = (b * b + D) // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if math.gcd(math.gcd(a, abs(b)), c) != 1:
                continue
            h += 1
    return h


def power_series_inverse_product(roots, k):
    """Coefficients of prod_i 1/(1 - r_i X) up to X^k."""
    out = np.zeros(k + 1, dtype=complex)
    out[0] = 1
    for r in roots:
        geo = np.array([r**j for j in range(k + 1)], dtype=complex)
        out = np.convolve(out, geo)[: k + 1]
    return out


def quadratic_roots(trace, det):
    disc = complex(trace) ** 2 - 4 * det
    s = np.sqrt(disc)
    return (trace + s) / 2, (trace - s) / 2


def sigma(k, n):
    return sum(d**k for d in range(1, n + 1) if n % d == 0)
