"""Fourier coefficients of the hermitian Maass lift F_c of f.

For a class representative c with norm C (prime to 2D):

    a_D(n)     = prod_{p | D} (1 + chi_p(-C n))
    alpha_F(n) = a_f(n') prod_{p | (D, n)} (a_f(n_p) + (-D, -C n)_p conj(a_f(n_p)))
    A_F(H)     = sum_{d | e(H)} d^{2k+1} alpha_F(C D det(H) / d^2)

and the twisted sum f^{c*} = sum_Q chi_Q(-C) f_Q satisfies
a_{f^{c*}}(n) = a_D(n) alpha_F(n).

A hermitian index H = (n, alpha; conj(alpha), m/C) is stored by the integer
coordinates (x, y) of alpha = (x + y tau)/sqrt(-D).  With Q the form of the
representative, C D det(H) = n m D - Q(x, y).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .chartools import chi_p, chi_Q, factorint, genus_subsets, underline_chi
from .eigenforms import InsufficientCoefficients, NewformSeries, twist_fQ
from .quadfield import IdealClassRep


@dataclass(frozen=True)
class HermitianIndex:
    n: int
    m: int
    x: int
    y: int
    rep: IdealClassRep

    @property
    def N_H(self) -> int:
        """``C * D * det(H)``, always an integer."""
        return self.n * self.m * self.rep.D - self.rep.form(self.x, self.y)

    def is_positive(self) -> bool:
        return self.n > 0 and self.N_H > 0


def content(H: HermitianIndex) -> int:
    """Largest ``d`` with ``H/d`` in the lattice."""
    g = math.gcd(math.gcd(H.n, H.m), math.gcd(H.x, H.y))
    if g == 0:
        raise ValueError("content of the zero matrix")
    return g


@dataclass
class LiftTable:
    """Memoised lift data for one eigenform ``f`` and one class representative.

    In exact mode every value is a :class:`~hermlift.exact.QuadElement`.
    """

    f: NewformSeries
    rep: IdealClassRep
    exact: bool = False
    _alpha: dict = field(default_factory=dict, repr=False)
    _aD: dict = field(default_factory=dict, repr=False)
    _twists: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.rep.D != self.f.D:
            raise ValueError(f"representative for D={self.rep.D} used with f of level {self.f.D}")
        if self.exact and not self.f.is_exact:
            raise ValueError(f"{self.f.label} has no exact coefficients")

    @property
    def C(self) -> int:
        return self.rep.norm_C

    @property
    def D(self) -> int:
        return self.f.D

    def a_f(self, n: int):
        if n > self.f.n_max:
            raise InsufficientCoefficients(n, self.f.n_max)
        return self.f.coeff(n, self.exact)

    def twist(self, Q: frozenset):
        if Q not in self._twists:
            self._twists[Q] = twist_fQ(self.f, Q)
        return self._twists[Q]


def aD_factor(table: LiftTable, n: int) -> int:
    out = 1
    for p in factorint(table.D):
        out *= 1 + chi_p(table.D, p, -table.C * n)
    return out


def alpha_F(table: LiftTable, n: int):
    if n <= 0:
        raise ValueError("alpha_F is defined for positive n")
    if n in table._alpha:
        return table._alpha[n]
    D, C = table.D, table.C
    fac = factorint(n)
    n_prime = 1
    out = None
    for p, e in fac.items():
        if D % p:
            n_prime *= p**e
    out = table.a_f(n_prime)
    for p, e in sorted(fac.items()):
        if D % p == 0:
            a = table.a_f(p**e)
            out = out * (a + underline_chi(D, p, -C * n) * a.conjugate())
    table._alpha[n] = out
    return out


def fc_star(table: LiftTable, n: int):
    """``a_{f^{c*}}(n) = sum_Q chi_Q(-C) a_{f_Q}(n)``."""
    total = 0
    for Q in genus_subsets(table.D):
        s = chi_Q(table.D, Q, -table.C)
        if s:
            total = total + s * table.twist(Q).coeff(n, table.exact)
    return total


def lift_coefficient(table: LiftTable, H: HermitianIndex):
    """``A_F(H) = sum_{d | e(H)} d^{2k+1} alpha_F(N_H / d^2)``."""
    if H.rep != table.rep:
        raise ValueError("index belongs to a different class representative")
    NH = H.N_H
    if not H.is_positive():
        raise ValueError(f"H is not positive definite (C*D*det = {NH})")
    e = content(H)
    k = table.f.kappa
    total = 0
    for d in range(1, e + 1):
        if e % d:
            continue
        if NH % (d * d):
            raise ArithmeticError(f"C*D*det(H)/d^2 not integral: {NH}/{d * d}")
        total = total + d ** (2 * k + 1) * alpha_F(table, NH // (d * d))
    return total
