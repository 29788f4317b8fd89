"""Quadratic characters attached to K = Q(sqrt(-D)).

``chi`` is the Kronecker character n -> (-D | n).  It factors as a product of
prime-discriminant characters ``chi_p`` over the ramified primes, and products
of these over subsets Q of ramified primes give the genus characters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

INF = math.inf


def factorint(n: int) -> dict[int, int]:
    """Prime factorisation of ``|n|`` by trial division (small inputs only)."""
    n = abs(n)
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of zero")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def is_squarefree(n: int) -> bool:
    return all(e == 1 for e in factorint(n).values())


@dataclass(frozen=True)
class FundamentalDiscriminant:
    """Positive integer ``D`` such that ``-D`` is a fundamental discriminant."""

    D: int

    def __post_init__(self):
        if not is_fundamental(self.D):
            raise ValueError(f"-{self.D} is not a fundamental discriminant")

    @property
    def ramified_primes(self) -> tuple[int, ...]:
        return tuple(sorted(factorint(self.D)))

    def prime_power(self, p: int) -> int:
        """``D_p = p^{ord_p D}``."""
        return p ** valuation(self.D, p)

    def __int__(self) -> int:
        return self.D


DiscLike = Union[int, FundamentalDiscriminant]


def is_fundamental(D: int) -> bool:
    if D <= 0:
        return False
    if D % 4 == 3:
        return is_squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (1, 2) and is_squarefree(m)
    return False


def as_disc(D: DiscLike) -> FundamentalDiscriminant:
    return D if isinstance(D, FundamentalDiscriminant) else FundamentalDiscriminant(int(D))


def kronecker_symbol(a: int, n: int) -> int:
    """Kronecker symbol ``(a | n)`` for arbitrary integers."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    res = 1
    if n < 0:
        n = -n
        if a < 0:
            res = -res
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            res = -res
    # Jacobi symbol (a | n), n odd positive
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                res = -res
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            res = -res
        a %= n
    return res if n == 1 else 0


def kronecker(D: DiscLike, n: int) -> int:
    """chi(n) = (-D | n), the character of K/Q."""
    return kronecker_symbol(-int(D), n)


def _square_class_int(x) -> int:
    """Integer in the same square class as the nonzero rational ``x``."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("Hilbert symbol of zero")
    return x.numerator * x.denominator


def hilbert_symbol(a, b, p) -> int:
    """Hilbert symbol ``(a, b)_v`` of nonzero rationals at ``v = p`` or ``v = inf``."""
    a = _square_class_int(a)
    b = _square_class_int(b)
    if p == INF or p == "inf":
        return -1 if (a < 0 and b < 0) else 1
    p = int(p)
    alpha, beta = valuation(a, p), valuation(b, p)
    u, v = a // p ** alpha, b // p ** beta
    if p == 2:
        eps = lambda t: ((t - 1) // 2) % 2  # noqa: E731
        omega = lambda t: ((t * t - 1) // 8) % 2  # noqa: E731
        e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)
        return -1 if e % 2 else 1
    s = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    if beta % 2:
        s *= kronecker_symbol(u, p)
    if alpha % 2:
        s *= kronecker_symbol(v, p)
    return s


def underline_chi(D: DiscLike, p, x) -> int:
    """Local character of K/Q at ``p``: ``x -> (-D, x)_p``."""
    return hilbert_symbol(-int(D), x, p)


def chi_p(D: DiscLike, p: int, n: int) -> int:
    """Prime-discriminant component of chi at the ramified prime ``p``.

    chi_p(n) = chi(m) where m = n mod D_p and m = 1 mod D/D_p.
    """
    d = as_disc(D)
    if d.D % p:
        raise ValueError(f"{p} does not divide {d.D}")
    if n % p == 0:
        return 0
    Dp = d.prime_power(p)
    rest = d.D // Dp
    # CRT: m = n + Dp*t with n + Dp*t = 1 mod rest
    t = ((1 - n) * pow(Dp, -1, rest)) % rest if rest > 1 else 0
    m = (n + Dp * t) % d.D
    return kronecker(d, m)


def _check_subset(d: FundamentalDiscriminant, Q: Iterable[int]) -> frozenset[int]:
    Q = frozenset(Q)
    if not Q <= set(d.ramified_primes):
        raise ValueError(f"{sorted(Q)} is not a set of primes dividing {d.D}")
    return Q


def chi_Q(D: DiscLike, Q: Iterable[int], n: int) -> int:
    d = as_disc(D)
    out = 1
    for p in sorted(_check_subset(d, Q)):
        out *= chi_p(d, p, n)
    return out


def chi_Q_prime(D: DiscLike, Q: Iterable[int], n: int) -> int:
    d = as_disc(D)
    Q = _check_subset(d, Q)
    return chi_Q(d, set(d.ramified_primes) - Q, n)


def genus_subsets(D: DiscLike) -> list[frozenset[int]]:
    """All subsets of the ramified primes, ordered by size then contents."""
    from itertools import combinations

    primes = as_disc(D).ramified_primes
    return [frozenset(c) for r in range(len(primes) + 1) for c in combinations(primes, r)]
