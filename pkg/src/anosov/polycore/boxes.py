"""Exact interval and rectangle arithmetic with rational endpoints.

Every operation is outward-correct: the result interval contains every
possible value of the operation over the inputs.  Endpoints are Fractions;
``dyadic_round`` is used by the isolation loop to keep denominators from
growing without bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import InputError

_ZERO = Fraction(0)


def dyadic_floor(x, bits):
    q = x * (1 << bits)
    return Fraction(q.numerator // q.denominator, 1 << bits)


def dyadic_ceil(x, bits):
    q = x * (1 << bits)
    return Fraction(-((-q.numerator) // q.denominator), 1 << bits)


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise InputError("interval endpoints out of order")

    @staticmethod
    def point(x):
        x = Fraction(x)
        return Interval(x, x)

    @property
    def width(self):
        return self.hi - self.lo

    @property
    def mid(self):
        return (self.lo + self.hi) / 2

    def __add__(self, other):
        return Interval(self.lo + other.lo, self.hi + other.hi)

    def __sub__(self, other):
        return Interval(self.lo - other.hi, self.hi - other.lo)

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __mul__(self, other):
        cands = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return Interval(min(cands), max(cands))

    def scale(self, c):
        c = Fraction(c)
        if c >= 0:
            return Interval(self.lo * c, self.hi * c)
        return Interval(self.hi * c, self.lo * c)

    def square(self):
        if self.lo >= 0:
            return Interval(self.lo * self.lo, self.hi * self.hi)
        if self.hi <= 0:
            return Interval(self.hi * self.hi, self.lo * self.lo)
        return Interval(_ZERO, max(self.lo * self.lo, self.hi * self.hi))

    def contains(self, x):
        return self.lo <= x <= self.hi

    def contains_zero(self):
        return self.lo <= 0 <= self.hi

    def strictly_positive(self):
        return self.lo > 0

    def reciprocal(self):
        if self.contains_zero():
            raise InputError("reciprocal of an interval containing zero")
        return Interval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other):
        return self * other.reciprocal()

    def intersect(self, other):
        lo = max(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        if lo > hi:
            return None
        return Interval(lo, hi)

    def outward(self, bits):
        return Interval(dyadic_floor(self.lo, bits), dyadic_ceil(self.hi, bits))

    def __repr__(self):
        return f"[{self.lo}, {self.hi}]"


@dataclass(frozen=True)
class Box:
    """Axis-aligned rectangle in the complex plane."""

    re: Interval
    im: Interval

    @staticmethod
    def point(re, im=0):
        return Box(Interval.point(re), Interval.point(im))

    @property
    def width(self):
        return max(self.re.width, self.im.width)

    @property
    def mid(self):
        return (self.re.mid, self.im.mid)

    def __add__(self, other):
        return Box(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        return Box(self.re - other.re, self.im - other.im)

    def __neg__(self):
        return Box(-self.re, -self.im)

    def __mul__(self, other):
        return Box(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def conj(self):
        return Box(self.re, -self.im)

    def abs_square(self):
        return self.re.square() + self.im.square()

    def contains_zero(self):
        return self.re.contains_zero() and self.im.contains_zero()

    def contains_point(self, re, im=0):
        return self.re.contains(Fraction(re)) and self.im.contains(Fraction(im))

    def __truediv__(self, other):
        denom = other.abs_square()
        if denom.contains_zero():
            raise InputError("division by a box containing zero")
        num = self * other.conj()
        inv = denom.reciprocal()
        return Box(num.re * inv, num.im * inv)

    def intersect(self, other):
        re = self.re.intersect(other.re)
        im = self.im.intersect(other.im)
        if re is None or im is None:
            return None
        return Box(re, im)

    def outward(self, bits):
        return Box(self.re.outward(bits), self.im.outward(bits))

    def sup_dist_sq_to(self, re, im=0):
        """Upper bound on |z - (re + i*im)|^2 over z in the box."""
        re, im = Fraction(re), Fraction(im)
        dr = max(abs(self.re.lo - re), abs(self.re.hi - re))
        di = max(abs(self.im.lo - im), abs(self.im.hi - im))
        return dr * dr + di * di

    def rounded(self, bits=64):
        """Outward dyadic rounding; the result still contains the box."""
        return Box(
            Interval(dyadic_floor(self.re.lo, bits), dyadic_ceil(self.re.hi, bits)),
            Interval(dyadic_floor(self.im.lo, bits), dyadic_ceil(self.im.hi, bits)),
        )

    def to_json(self):
        def fr(x):
            return str(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

        return {
            "re": [fr(self.re.lo), fr(self.re.hi)],
            "im": [fr(self.im.lo), fr(self.im.hi)],
        }

    def __repr__(self):
        return f"Box(re={self.re}, im={self.im})"


def eval_poly_box(coeffs, box):
    """Evaluate a polynomial (ascending integer/Fraction coeffs) over a Box."""
    acc = Box.point(0)
    for c in reversed(list(coeffs)):
        acc = acc * box + Box.point(Fraction(c))
    return acc


def eval_poly_interval(coeffs, ival):
    """Evaluate over a real interval; exact Horner with interval coefficients."""
    acc = Interval.point(0)
    for c in reversed(list(coeffs)):
        acc = acc * ival + Interval.point(Fraction(c))
    return acc
