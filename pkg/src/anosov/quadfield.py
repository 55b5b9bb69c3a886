"""Exact arithmetic in a real or imaginary quadratic extension Q(sqrt(rad)).

Elements are a + b*sqrt(rad) with rational a, b and a fixed nonsquare
integer radicand.  The radicand is not reduced to its squarefree part;
callers pick whatever radicand is natural (a field discriminant, a Pell
parameter) and sqrt_rational below answers squareness questions relative
to it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import InputError


def rational_sqrt(q):
    """Exact square root of a Fraction, or None when q is not a square."""
    q = Fraction(q)
    if q < 0:
        return None
    if q == 0:
        return Fraction(0)
    rn = isqrt(q.numerator)
    rd = isqrt(q.denominator)
    if rn * rn != q.numerator or rd * rd != q.denominator:
        return None
    return Fraction(rn, rd)


@dataclass(frozen=True)
class QuadExt:
    """a + b*sqrt(rad) with exact rational parts."""

    rad: int
    a: Fraction
    b: Fraction

    def __post_init__(self):
        if rational_sqrt(Fraction(self.rad)) is not None:
            raise InputError("radicand must not be a perfect square")
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    @staticmethod
    def of(rad, a, b=0):
        return QuadExt(rad, Fraction(a), Fraction(b))

    def _match(self, other):
        if isinstance(other, QuadExt):
            if other.rad != self.rad:
                raise InputError("mixed radicands")
            return other
        return QuadExt(self.rad, Fraction(other), Fraction(0))

    @property
    def is_zero(self):
        return self.a == 0 and self.b == 0

    @property
    def is_rational(self):
        return self.b == 0

    def conjugate(self):
        return QuadExt(self.rad, self.a, -self.b)

    def norm(self):
        return self.a * self.a - self.rad * self.b * self.b

    def trace(self):
        return 2 * self.a

    def __add__(self, other):
        o = self._match(other)
        return QuadExt(self.rad, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(self.rad, -self.a, -self.b)

    def __sub__(self, other):
        return self + (-self._match(other))

    def __rsub__(self, other):
        return self._match(other) + (-self)

    def __mul__(self, other):
        o = self._match(other)
        return QuadExt(
            self.rad,
            self.a * o.a + self.rad * self.b * o.b,
            self.a * o.b + self.b * o.a,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._match(other)
        n = o.norm()
        if n == 0:
            raise InputError("division by zero in quadratic field")
        inv = QuadExt(self.rad, o.a / n, -o.b / n)
        return self * inv

    def __rtruediv__(self, other):
        return self._match(other) / self

    def __pow__(self, e):
        if e < 0:
            return QuadExt.of(self.rad, 1) / self ** (-e)
        out = QuadExt.of(self.rad, 1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            return self.rad == other.rad and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        return hash((self.rad, self.a, self.b))

    def __repr__(self):
        return f"QuadExt({self.rad}, {self.a}, {self.b})"


def sqrt_in_field(value, rad):
    """Square root of a rational inside Q(sqrt(rad)), or None.

    A rational v is a square in Q(sqrt(rad)) exactly when v or v*rad is a
    rational square: (b*sqrt(rad))^2 = b^2*rad covers the second branch.
    """
    v = Fraction(value)
    r = rational_sqrt(v)
    if r is not None:
        return QuadExt.of(rad, r)
    r = rational_sqrt(v * rad)
    if r is not None:
        return QuadExt(rad, Fraction(0), r / rad)
    return None
