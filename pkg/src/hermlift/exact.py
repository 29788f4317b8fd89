"""Exact arithmetic in an imaginary quadratic field Q(sqrt(-d0))."""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational


class QuadElement:
    """The number ``u + v*sqrt(-d0)`` with rational ``u`` and ``v``.

    Supports ring operations with other elements of the same field and with
    Python integers/fractions, plus ``conjugate`` so that code written for
    complex floats runs unchanged in exact mode.
    """

    __slots__ = ("u", "v", "d0")

    def __init__(self, u, v=0, d0: int = 1):
        if d0 <= 0:
            raise ValueError("d0 must be positive")
        self.u = Fraction(u)
        self.v = Fraction(v)
        self.d0 = int(d0)

    def _coerce(self, other):
        if isinstance(other, QuadElement):
            if other.d0 != self.d0 and other.v != 0 and self.v != 0:
                raise ValueError(f"mixed fields: sqrt(-{self.d0}) and sqrt(-{other.d0})")
            return other
        if isinstance(other, (int, Rational)):
            return QuadElement(other, 0, self.d0)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return complex(self) + other
        return QuadElement(self.u + o.u, self.v + o.v, self.d0)

    __radd__ = __add__

    def __neg__(self):
        return QuadElement(-self.u, -self.v, self.d0)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return complex(self) * other
        return QuadElement(
            self.u * o.u - self.d0 * self.v * o.v,
            self.u * o.v + self.v * o.u,
            self.d0,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return complex(self) / other
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in quadratic field")
        c = o.conjugate()
        return QuadElement((self * c).u / n, (self * c).v / n, self.d0)

    def __rtruediv__(self, other):
        return QuadElement(other, 0, self.d0) / self

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return QuadElement(1, 0, self.d0) / (self ** -e)
        out = QuadElement(1, 0, self.d0)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def conjugate(self) -> "QuadElement":
        return QuadElement(self.u, -self.v, self.d0)

    def norm(self) -> Fraction:
        return self.u * self.u + self.d0 * self.v * self.v

    @property
    def real(self) -> Fraction:
        return self.u

    def __abs__(self) -> float:
        return math.sqrt(self.norm())

    def __complex__(self) -> complex:
        return complex(float(self.u), float(self.v) * math.sqrt(self.d0))

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is NotImplemented:
            return complex(self) == other
        return self.u == o.u and self.v == o.v

    def __hash__(self) -> int:
        if self.v == 0:
            return hash(self.u)
        return hash((self.u, self.v, self.d0))

    def is_purely_imaginary(self) -> bool:
        return self.u == 0

    def __repr__(self) -> str:
        return f"QuadElement({self.u}, {self.v}, d0={self.d0})"

    def __str__(self) -> str:
        root = f"sqrt(-{self.d0})"
        if self.v == 0:
            return str(self.u)
        v = root if self.v == 1 else f"-{root}" if self.v == -1 else f"{self.v}*{root}"
        if self.u == 0:
            return v
        sign = "-" if self.v < 0 else "+"
        return f"{self.u} {sign} {v.lstrip('-')}"
