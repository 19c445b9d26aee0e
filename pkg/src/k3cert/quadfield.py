"""Exact arithmetic in real quadratic extensions Q(sqrt(d)).

A QuadExt value is a + b*sqrt(d) with rational a, b and a fixed positive
non-square integer d.  Signs are decided by exact rational comparison,
never by floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple


def is_square(n):
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


@dataclass(frozen=True)
class QuadExt:
    a: Fraction
    b: Fraction
    d: int

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.d <= 0 or is_square(self.d):
            raise ValueError("d must be a positive non-square integer")

    # -- coercion ----------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, QuadExt):
            if other.d != self.d:
                raise ValueError("mixed discriminants %d and %d" % (self.d, other.d))
            return other
        if isinstance(other, (int, Fraction)):
            return QuadExt(Fraction(other), Fraction(0), self.d)
        return NotImplemented

    # -- ring/field operations --------------------------------------------
    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadExt(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadExt(self.a * o.a + self.b * o.b * self.d,
                       self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(%d))" % self.d)
        return self * QuadExt(o.a / n, -o.b / n, self.d)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, k):
        if k < 0:
            return (QuadExt(1, 0, self.d) / self) ** (-k)
        out = QuadExt(1, 0, self.d)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    # -- structure ---------------------------------------------------------
    def conjugate(self):
        return QuadExt(self.a, -self.b, self.d)

    def norm(self):
        """Field norm a^2 - b^2 d (a rational)."""
        return self.a * self.a - self.b * self.b * self.d

    def is_rational(self):
        return self.b == 0

    def sign(self):
        """Exact sign of a + b*sqrt(d) via rational comparison."""
        a, b = self.a, self.b
        if b == 0:
            return 0 if a == 0 else (1 if a > 0 else -1)
        if a == 0:
            return 1 if b > 0 else -1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare a^2 against b^2 d
        lhs = a * a
        rhs = b * b * self.d
        if lhs == rhs:
            return 0
        if a > 0:  # b < 0
            return 1 if lhs > rhs else -1
        return -1 if lhs > rhs else 1

    def __gt__(self, other):
        o = self._lift(other)
        return (self - o).sign() > 0

    def __lt__(self, other):
        o = self._lift(other)
        return (self - o).sign() < 0

    def __ge__(self, other):
        return not self < other

    def __le__(self, other):
        return not self > other

    def __repr__(self):
        return "QuadExt(%s, %s, %d)" % (self.a, self.b, self.d)

    def __str__(self):
        return serialize(self)

    @staticmethod
    def rational(x, d):
        return QuadExt(Fraction(x), Fraction(0), d)

    @staticmethod
    def sqrt_of(d):
        return QuadExt(Fraction(0), Fraction(1), d)


def sign_of(x):
    if isinstance(x, QuadExt):
        return x.sign()
    x = Fraction(x)
    return 0 if x == 0 else (1 if x > 0 else -1)


class RootPair(NamedTuple):
    alpha: object  # QuadExt, or Fraction when rational
    beta: object
    rational: bool


def quadratic_roots(a):
    """Roots of t^2 - a t + 1 = 0 with integer a.

    Nondegenerate branch (a^2 - 4 positive non-square): returns exact
    QuadExt roots with alpha >= beta and alpha * beta = 1.  Rational
    roots are returned in-band with the ``rational`` flag set.
    """
    disc = a * a - 4
    if disc >= 0 and is_square(disc):
        r = math.isqrt(disc)
        alpha = Fraction(a + r, 2)
        beta = Fraction(a - r, 2)
        return RootPair(alpha, beta, True)
    if disc < 0:
        raise ValueError("t^2 - %d t + 1 has no real roots" % a)
    half = Fraction(1, 2)
    alpha = QuadExt(half * a, half, disc)
    beta = QuadExt(half * a, -half, disc)
    return RootPair(alpha, beta, False)


def serialize(x):
    """Render as "a+b√d" with exact rationals."""
    a, b = x.a, x.b
    def fr(f):
        return "%d/%d" % (f.numerator, f.denominator) if f.denominator != 1 else str(f.numerator)
    if b == 0:
        return fr(a)
    sign = "+" if b >= 0 else "-"
    return "%s%s%s√%d" % (fr(a), sign, fr(abs(b)), x.d)
