"""Imaginary quadratic fields via binary quadratic forms.

A primitive positive definite form ``(a, b, c)`` of discriminant ``-D``
corresponds to the ideal ``[a, (-b + sqrt(-D))/2]``.  Its inverse ideal has
Z-basis ``{1, tau}`` with ``tau = (b + sqrt(-D))/(2a)`` and

    N(x + y*tau) = (a x^2 + b x y + c y^2) / a.

Class representatives are normalised to have ``a`` prime to ``2D``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .chartools import (
    DiscLike,
    FundamentalDiscriminant,
    as_disc,
    chi_Q,
    is_squarefree,
    kronecker,
)

REP_SEARCH_LIMIT = 10**6


class Form(NamedTuple):
    a: int
    b: int
    c: int

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def is_reduced(self) -> bool:
        a, b, c = self
        return abs(b) <= a <= c and not (b < 0 and (abs(b) == a or a == c))


def normalize(f: Form) -> Form:
    """Translate ``b`` into ``(-a, a]``."""
    a, b, c = f
    r = (a - b) // (2 * a)
    return Form(a, b + 2 * r * a, a * r * r + b * r + c)


def reduce_form(f: Form) -> Form:
    a, b, c = normalize(Form(*f))
    while a > c or (a == c and b < 0):
        a, b, c = normalize(Form(c, -b, a))
    return Form(a, b, c)


def transform(f: Form, x: int, r: int, y: int, s: int) -> Form:
    """``f(x X + r Y, y X + s Y)`` for the matrix ``[[x, r], [y, s]]``."""
    a, b, c = f
    return Form(
        f(x, y),
        2 * a * x * r + b * (x * s + r * y) + 2 * c * y * s,
        f(r, s),
    )


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def compose(f1: Form, f2: Form) -> Form:
    """Gauss composition followed by reduction (Cohen, Alg. 5.4.7)."""
    if f1.a > f2.a:
        f1, f2 = f2, f1
    a1, b1, c1 = f1
    a2, b2, c2 = f2
    s = (b1 + b2) // 2
    n = b2 - s
    if a2 % a1 == 0:
        y1, d = 0, a1
    else:
        d, u, _ = _xgcd(a2, a1)
        y1 = u
    if s % d == 0:
        y2, x2, d1 = -1, 0, d
    else:
        d1, u, v = _xgcd(s, d)
        x2, y2 = u, -v
    v1 = a1 // d1
    v2 = a2 // d1
    r = (y1 * y2 * n - x2 * c2) % v1
    b3 = b2 + 2 * v2 * r
    a3 = v1 * v2
    c3 = (c2 * d1 + r * (b2 + v2 * r)) // v1
    return reduce_form(Form(a3, b3, c3))


def reduced_forms(D: DiscLike) -> list[Form]:
    """All reduced primitive forms of discriminant ``-D``, sorted."""
    D = int(D)
    out = []
    a = 1
    while 3 * a * a <= D:
        for b in range(-a + 1, a + 1):
            if (b * b + D) % (4 * a):
                continue
            c = (b * b + D) // (4 * a)
            f = Form(a, b, c)
            if f.is_reduced() and math.gcd(math.gcd(a, b), c) == 1:
                out.append(f)
        a += 1
    return sorted(out)


def roots_of_unity(D: DiscLike) -> int:
    D = int(D)
    return {3: 6, 4: 4}.get(D, 2)


@dataclass(frozen=True)
class IdealClassRep:
    """An ideal class, represented by a form whose first coefficient ``C``
    is prime to ``2D``."""

    D: int
    form: Form

    def __post_init__(self):
        a, b, c = self.form
        if self.form.disc != -self.D:
            raise ValueError(f"{self.form} does not have discriminant -{self.D}")
        if a <= 0 or math.gcd(math.gcd(a, b), c) != 1:
            raise ValueError(f"{self.form} is not primitive positive definite")

    @property
    def norm_C(self) -> int:
        return self.form.a

    @property
    def reduced(self) -> Form:
        return reduce_form(self.form)

    def norm_of(self, x: int, y: int) -> Fraction:
        """``N(alpha)`` for ``alpha = (x + y*tau)/sqrt(-D)`` in sqrt(-D)^{-1} c^{-1}."""
        return Fraction(self.form(x, y), self.form.a * self.D)


def inverse_ideal_lattice(rep: IdealClassRep) -> tuple[Form, int]:
    """Integral norm form of the lattice ``sqrt(-D)^{-1} c^{-1}``.

    Returns ``(q, scale)`` with ``q(x, y) = (2ax + by)^2 + D y^2`` and
    ``N(alpha) = q(x, y) / scale`` where ``scale = 4 a^2 D``.
    """
    a, b, _ = rep.form
    D = rep.D
    q = Form(4 * a * a, 4 * a * b, b * b + D)
    return q, 4 * a * a * D


def _primitive_values(f: Form, bound: int):
    """Yield ``(value, x, y)`` for coprime (x, y) with ``f(x, y) <= bound``."""
    a, b, c = f
    D = -f.disc
    ymax = math.isqrt(4 * a * bound // D) + 1
    for y in range(0, ymax + 1):
        # a(x + b y/2a)^2 <= bound - D y^2/4a
        rem = bound - Fraction(D * y * y, 4 * a)
        if rem < 0:
            continue
        centre = Fraction(-b * y, 2 * a)
        w = math.isqrt(int(rem / a)) + 1
        for x in range(math.floor(centre) - w, math.ceil(centre) + w + 1):
            if y == 0 and x != 1:
                continue
            if math.gcd(x, y) != 1:
                continue
            v = f(x, y)
            if v <= bound:
                yield v, x, y


def forms_with_first_coefficient(f: Form, m: int) -> list[Form]:
    """Normalised forms properly equivalent to ``f`` with first coefficient ``m``."""
    out = set()
    for v, x, y in _primitive_values(f, m):
        if v != m:
            continue
        _, s, r = _xgcd(x, y)  # x*s + y*r = 1
        g = transform(f, x, -r, y, s)
        out.add(normalize(g))
    return sorted(out, key=lambda g: (abs(g.b), -g.b))


def normalized_rep(D: DiscLike, f: Form, *, squarefree: bool = False) -> IdealClassRep:
    """Representative of the class of ``f`` with ``gcd(a, 2D) = 1``.

    Minimal ``a`` first, then minimal ``|b|`` with ``b > 0`` preferred.
    With ``squarefree=True`` the norm is also required to be squarefree.
    """
    d = as_disc(D)
    f = reduce_form(f)
    bound = max(f.c, 8)
    while bound <= REP_SEARCH_LIMIT:
        vals = sorted({v for v, _, _ in _primitive_values(f, bound)})
        for v in vals:
            if math.gcd(v, 2 * d.D) != 1:
                continue
            if squarefree and not is_squarefree(v):
                continue
            cands = forms_with_first_coefficient(f, v)
            if cands:
                return IdealClassRep(d.D, cands[0])
        bound *= 4
    raise ArithmeticError(
        f"no representative of {f} with norm prime to {2 * d.D} below {REP_SEARCH_LIMIT}"
    )


@dataclass(frozen=True)
class ClassGroup:
    D: FundamentalDiscriminant
    reps: tuple[IdealClassRep, ...]
    w_K: int
    squares: tuple[int, ...] = field(default=())

    @property
    def h_K(self) -> int:
        return len(self.reps)

    @property
    def forms(self) -> list[Form]:
        return [r.reduced for r in self.reps]

    def index_of(self, f: Form) -> int:
        g = reduce_form(f)
        for i, r in enumerate(self.reps):
            if r.reduced == g:
                return i
        raise KeyError(f"{f} is not a form of discriminant -{self.D.D}")

    def multiply(self, i: int, j: int) -> int:
        return self.index_of(compose(self.reps[i].reduced, self.reps[j].reduced))

    @property
    def genus_index(self) -> int:
        """``(Cl_K : Cl_K^2)``."""
        return self.h_K // len(self.squares)

    def square_cosets(self) -> list[list[int]]:
        """Partition of class indices into cosets of ``Cl_K^2``."""
        seen: set[int] = set()
        cosets = []
        for i in range(self.h_K):
            if i in seen:
                continue
            coset = sorted({self.multiply(i, s) for s in self.squares})
            seen.update(coset)
            cosets.append(coset)
        return cosets

    def rep_with_norm(self, C: int) -> IdealClassRep:
        """A representative of norm ``C`` (searching equivalent forms)."""
        for r in self.reps:
            if r.norm_C == C:
                return r
        for r in self.reps:
            cands = forms_with_first_coefficient(r.reduced, C)
            if cands:
                return IdealClassRep(self.D.D, cands[0])
        raise ValueError(f"no primitive ideal of norm {C} for D={self.D.D}")


def class_group(D: DiscLike) -> ClassGroup:
    d = as_disc(D)
    reps = tuple(normalized_rep(d, f) for f in reduced_forms(d.D))
    reps = tuple(sorted(reps, key=lambda r: (r.norm_C, abs(r.form.b), -r.form.b)))
    tmp = ClassGroup(d, reps, roots_of_unity(d.D))
    squares = sorted({tmp.index_of(compose(r.reduced, r.reduced)) for r in reps})
    return ClassGroup(d, reps, roots_of_unity(d.D), tuple(squares))


def prime_ideal_rep(D: DiscLike, p: int) -> IdealClassRep:
    """Class of a degree-one prime above the split prime ``p``.

    Returns the form ``(p, b, c)`` with the smallest ``|b|``, ``b > 0``; the
    conjugate prime corresponds to ``(p, -b, c)``.
    """
    d = as_disc(D)
    if kronecker(d, p) != 1 or (2 * d.D) % p == 0:
        raise ValueError(f"{p} does not split in Q(sqrt(-{d.D})) away from 2D")
    for b in range(0, p + 1):
        if (b * b + d.D) % (4 * p) == 0:
            return IdealClassRep(d.D, Form(p, b, (b * b + d.D) // (4 * p)))
    raise ArithmeticError(f"no square root of -{d.D} mod 4*{p}")  # pragma: no cover


def L1_class_number_formula(D: DiscLike) -> float:
    d = as_disc(D)
    h = len(reduced_forms(d.D))
    return 2 * math.pi * h / (roots_of_unity(d.D) * math.sqrt(d.D))


def genus_coset_reps(cg: ClassGroup) -> list[IdealClassRep]:
    """One representative per coset of ``Cl_K^2`` with squarefree norm prime to 2D."""
    out = []
    for coset in cg.square_cosets():
        r = cg.reps[coset[0]]
        out.append(normalized_rep(cg.D, r.reduced, squarefree=True))
    return out


def genus_character_average(D: DiscLike, cg: ClassGroup, Q) -> Fraction:
    """``(Cl_K : Cl_K^2)^{-1} sum_j chi_Q(-N(c_j))`` over coset representatives."""
    reps = genus_coset_reps(cg)
    total = sum(chi_Q(D, Q, -r.norm_C) for r in reps)
    return Fraction(total, len(reps))
