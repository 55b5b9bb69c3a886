"""Certified complex root isolation with exact rational enclosures.

Each root of the input polynomial is wrapped in a ``CertifiedRoot`` carrying a
rectangular ``Box`` with dyadic-rational corners that provably contains exactly
one root of its irreducible factor.  Initial rectangles come from sympy's
exact isolation machinery (rational corners, one root per rectangle, rectangles
of one factor pairwise disjoint); all subsequent tightening preserves the
certificate:

* an interval-Newton step ``N(W) = m - f(m) / f'(W)`` is only taken when the
  derivative box excludes zero, in which case any root inside W also lies in
  ``N(W) & W``; outward dyadic rounding only enlarges the box;
* otherwise one sympy refinement step is taken and intersected with the
  current box.

Canonical root order (used everywhere a root index appears): all real roots
first, sorted ascending by exact comparison, then all non-real roots grouped
by irreducible factor (factors ordered by degree, then lexicographically on
descending coefficients), each factor's non-real roots sorted by the
lower-left corner of its initial isolation rectangle, real coordinate first.
The corner order agrees with (re, im) order whenever the initial rectangles
separate real parts, and is computed before any refinement, so the ordering
does not depend on the precision a caller requests.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key

from ..errors import InputError, PrecisionCapError
from .boxes import Box, Interval, eval_poly_box
from .poly import IntPolynomial, factor_over_rationals, unit_circle_root_count

PRECISION_CAP_BITS = 1 << 16


def _mpq_fraction(q):
    return Fraction(int(q.numerator), int(q.denominator))


class CertifiedRoot:
    """One root of ``parent`` (irreducible over Q) inside a certified box."""

    __slots__ = ("parent", "multiplicity", "box", "is_real", "index",
                 "_exact", "_interval", "_work_bits", "_lo_sign")

    def __init__(self, parent, multiplicity, box, is_real, exact=None, interval=None):
        self.parent = parent
        self.multiplicity = multiplicity
        self.box = box
        self.is_real = is_real
        self.index = -1
        self._exact = exact          # Fraction for rational roots, else None
        self._interval = interval    # sympy interval object, refinable
        self._work_bits = 64
        self._lo_sign = None         # cached sign of parent at box.re.lo

    def width(self):
        return self.box.width

    def midpoint(self):
        return self.box.mid

    def _sympy_box(self):
        iv = self._interval
        if self.is_real:
            return Box(Interval(_mpq_fraction(iv.a), _mpq_fraction(iv.b)),
                       Interval(Fraction(0), Fraction(0)))
        return Box(Interval(_mpq_fraction(iv.ax), _mpq_fraction(iv.bx)),
                   Interval(_mpq_fraction(iv.ay), _mpq_fraction(iv.by)))

    def _newton_step(self, round_bits):
        dbox = eval_poly_box(self.parent.derivative().coeffs, self.box)
        if dbox.contains_zero():
            return False
        mr, mi = self.midpoint()
        m = Box.point(mr, mi)
        # midpoint evaluation is exact complex arithmetic, no box overhead
        vr = vi = Fraction(0)
        for c in reversed(self.parent.coeffs):
            vr, vi = vr * mr - vi * mi + c, vr * mi + vi * mr
        fm = Box.point(vr, vi)
        try:
            n = m - fm / dbox
        except InputError:
            return False
        inter = n.intersect(self.box)
        if inter is None:
            # cannot happen for a box that truly contains the root; treat as
            # a failed step and let the sympy fallback make progress
            return False
        new = inter.outward(round_bits)
        if new.width * 2 <= self.box.width:
            self.box = new.intersect(self.box) or new
            self._lo_sign = None
            return True
        return False

    def _sign_at(self, x):
        v = Fraction(0)
        for c in reversed(self.parent.coeffs):
            v = v * x + c
        return (v > 0) - (v < 0)

    def _bisect_step(self):
        # exact sign bisection; endpoints are never roots because the parent
        # is irreducible of degree >= 2
        lo, hi = self.box.re.lo, self.box.re.hi
        if self._lo_sign is None:
            self._lo_sign = self._sign_at(lo)
        mid = (lo + hi) / 2
        s = self._sign_at(mid)
        if s == 0:
            self._exact = mid
            self.box = Box(Interval(mid, mid), Interval(Fraction(0), Fraction(0)))
            return
        if s == self._lo_sign:
            lo = mid
        else:
            hi = mid
        self.box = Box(Interval(lo, hi), Interval(Fraction(0), Fraction(0)))

    def _sympy_step(self, round_bits):
        self._interval = self._interval.refine()
        refined = self._sympy_box().outward(round_bits)
        inter = refined.intersect(self.box)
        self.box = inter if inter is not None else refined

    def refine_to(self, bits):
        """Shrink the box until both side lengths are at most 2**-bits."""
        if bits > PRECISION_CAP_BITS:
            raise PrecisionCapError(f"requested precision 2^-{bits} exceeds the cap")
        if self._exact is not None:
            return self
        target = Fraction(1, 1 << bits)
        round_bits = bits + 32
        budget = 16 + 8 * bits
        while self.box.width > target:
            if budget <= 0:
                raise PrecisionCapError("root refinement did not converge")
            budget -= 1
            if self._newton_step(round_bits):
                continue
            if self.is_real:
                self._bisect_step()
            else:
                self._sympy_step(round_bits)
        self._work_bits = max(self._work_bits, bits)
        return self

    def to_json(self):
        return {
            "poly": self.parent.to_json(),
            "multiplicity": self.multiplicity,
            "is_real": self.is_real,
            "box": self.box.to_json(),
        }

    def __repr__(self):
        mr, mi = self.midpoint()
        return (f"CertifiedRoot(~{float(mr):.6g}{float(mi):+.6g}j, "
                f"of {self.parent.to_text()}, mult {self.multiplicity})")

    def approx(self):
        """Midpoint of the current box as a (re, im) Fraction pair."""
        return self.midpoint()


def _roots_of_factor(factor, multiplicity):
    from sympy.polys.domains import QQ
    from sympy.polys.rootisolation import (
        dup_isolate_complex_roots_sqf,
        dup_isolate_real_roots_sqf,
    )

    if factor.degree == 1:
        b, a = factor.coeffs
        val = Fraction(-b, a)
        return [CertifiedRoot(factor, multiplicity, Box.point(val), True, exact=val)], []

    desc = [QQ(c) for c in reversed(factor.coeffs)]
    reals = []
    for iv in dup_isolate_real_roots_sqf(desc, QQ, blackbox=True):
        box = Box(Interval(_mpq_fraction(iv.a), _mpq_fraction(iv.b)),
                  Interval.point(Fraction(0)))
        reals.append(CertifiedRoot(factor, multiplicity, box, True, interval=iv))
    reals.sort(key=lambda cr: cr.box.re.lo)
    complexes = []
    for iv in dup_isolate_complex_roots_sqf(desc, QQ, blackbox=True):
        box = Box(Interval(_mpq_fraction(iv.ax), _mpq_fraction(iv.bx)),
                  Interval(_mpq_fraction(iv.ay), _mpq_fraction(iv.by)))
        complexes.append(CertifiedRoot(factor, multiplicity, box, False, interval=iv))
    complexes.sort(key=lambda cr: (cr.box.re.lo, cr.box.im.lo))
    return reals, complexes


def _real_cmp(a, b):
    """Exact order of two distinct real algebraic numbers via refinement."""
    bits = 32
    while True:
        if a.box.re.hi < b.box.re.lo:
            return -1
        if b.box.re.hi < a.box.re.lo:
            return 1
        bits *= 2
        if bits > PRECISION_CAP_BITS:
            raise PrecisionCapError("could not order real roots under the precision cap")
        a.refine_to(bits)
        b.refine_to(bits)


def _separate(roots, bits):
    """Refine until all boxes are pairwise disjoint (roots are distinct)."""
    while True:
        clash = False
        for i in range(len(roots)):
            for j in range(i + 1, len(roots)):
                if roots[i].box.intersect(roots[j].box) is not None:
                    clash = True
                    roots[i].refine_to(bits)
                    roots[j].refine_to(bits)
        if not clash:
            return
        bits *= 2
        if bits > PRECISION_CAP_BITS:
            raise PrecisionCapError("could not separate root boxes under the precision cap")


def isolate_roots(f, bits=64):
    """Certified boxes for every distinct root of f, canonically ordered.

    Returns a list of CertifiedRoot whose boxes are pairwise disjoint, each of
    side length at most 2**-bits, each containing exactly one root of its
    irreducible factor; multiplicities refer to the input polynomial.
    """
    if f.is_zero or f.degree < 1:
        raise InputError("root isolation requires degree >= 1")
    fl = factor_over_rationals(f)
    real_roots = []
    complex_roots = []
    for factor, mult in fl.factors:
        if factor.degree < 1:
            continue
        reals, complexes = _roots_of_factor(factor, mult)
        real_roots.extend(reals)
        complex_roots.extend(complexes)
    real_roots.sort(key=cmp_to_key(_real_cmp))
    ordered = real_roots + complex_roots
    for k, cr in enumerate(ordered):
        cr.index = k
        cr.refine_to(bits)
    _separate(ordered, bits * 2)
    return ordered


def count_roots_by_modulus(f):
    """Distinct roots of f strictly inside, on, and outside the unit circle.

    The on-circle count is exact and combinatorial; the off-circle roots are
    then separated from the circle by box refinement, which terminates
    because exactly (distinct - on) of them can ever be decided.
    """
    on = unit_circle_root_count(f)
    roots = isolate_roots(f, bits=64)
    inside = outside = 0
    pending = list(roots)
    bits = 128
    while inside + outside < len(roots) - on:
        still = []
        for cr in pending:
            sq = cr.box.abs_square()
            if sq.hi < 1:
                inside += 1
            elif sq.lo > 1:
                outside += 1
            else:
                still.append(cr)
        if inside + outside >= len(roots) - on:
            break
        if bits > PRECISION_CAP_BITS:
            raise PrecisionCapError("modulus comparison exceeded the precision cap")
        for cr in still:
            cr.refine_to(bits)
        pending = still
        bits *= 2
    return inside, on, len(roots) - inside - on
