"""Galois groups of integer polynomials of degree at most 4, exactly.

Cubics are classified by discriminant squareness, quartics by the cubic
resolvent.  The cyclic-versus-dihedral case is settled constructively: we
factor the quartic into two quadratics over the quadratic subfield and
multiply the factors back, so a Z4 answer always carries an exact witness.
The module also checks Anosov polynomials of degree <= 4 against the row
table of admissible groups (degree, full rank, irreducible).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError
from .polycore import (
    IntPolynomial,
    discriminant,
    factor_over_rationals,
    is_anosov_polynomial,
)
from .quadfield import QuadExt, rational_sqrt, sqrt_in_field
from .unitlattice import is_full_rank

_ORDERS = {
    "Z2": 2,
    "Z2xZ2": 4,
    "Z3": 3,
    "S3": 6,
    "Z4": 4,
    "K4": 4,
    "D8": 8,
    "A4": 12,
    "S4": 24,
}


@dataclass(frozen=True)
class GaloisGroupTag:
    tag: str
    order: int

    def __post_init__(self):
        if self.tag not in _ORDERS:
            raise InputError(f"unknown group tag {self.tag!r}")
        if self.order != _ORDERS[self.tag]:
            raise InputError(f"order {self.order} does not match tag {self.tag}")

    @staticmethod
    def of(tag):
        return GaloisGroupTag(tag, _ORDERS[tag])


def _require_irreducible(f, degree):
    if f.degree != degree:
        raise InputError(f"expected degree {degree}, got {f.degree}")
    fl = factor_over_rationals(f)
    if len(fl.factors) != 1 or fl.factors[0][1] != 1:
        raise InputError("polynomial is reducible")


def galois_group_cubic(f):
    """Galois group of an irreducible integer cubic: Z3 iff disc is a square."""
    _require_irreducible(f, 3)
    if rational_sqrt(Fraction(discriminant(f))) is not None:
        return GaloisGroupTag.of("Z3")
    return GaloisGroupTag.of("S3")


def resolvent_cubic(f):
    """Cubic resolvent of a monic quartic x^4+ax^3+bx^2+cx+d.

    Convention y^3 - b y^2 + (ac - 4d) y - (a^2 d - 4bd + c^2); its roots
    are the pair sums x1x2+x3x4, x1x3+x2x4, x1x4+x2x3.
    """
    if f.degree != 4 or not f.is_monic:
        raise InputError("resolvent cubic needs a monic quartic")
    d, c, b, a, _ = f.coeffs
    return IntPolynomial.from_descending(
        [1, -b, a * c - 4 * d, -(a * a * d - 4 * b * d + c * c)]
    )


def _quadratic_split_witness(f, theta):
    """Factor f into two quadratics over Q(sqrt(disc f)), or None.

    theta is a rational root of the resolvent, giving the pair products
    q1 q2 = d, q1 + q2 = theta and the pair sums p1 + p2 = a,
    p1 p2 = b - theta.  Both square roots must exist in the field; the
    linear coefficient then fixes the pairing, which is verified by exact
    multiplication.
    """
    d, c, b, a, _ = [Fraction(x) for x in f.coeffs]
    big_d = discriminant(f)
    s1 = sqrt_in_field(theta * theta - 4 * d, big_d)
    s2 = sqrt_in_field(a * a - 4 * b + 4 * theta, big_d)
    if s1 is None or s2 is None:
        return None
    half = Fraction(1, 2)
    q1 = (theta + s1) * half
    q2 = (theta - s1) * half
    p1 = (a + s2) * half
    p2 = (a - s2) * half
    for qa, qb in ((q1, q2), (q2, q1)):
        if p1 * qb + p2 * qa == c:
            return (p1, qa, p2, qb)
    raise InputError("internal: split condition held but no pairing matched")


def galois_group_quartic(f):
    """Galois group of an irreducible integer quartic via the cubic resolvent.

    Resolvent irreducible: A4 when disc(f) is a square, else S4.  Resolvent
    split: K4.  Exactly one rational resolvent root: Z4 when the quartic
    factors over Q(sqrt(disc f)), else D8.
    """
    _require_irreducible(f, 4)
    if not f.is_monic:
        raise InputError("quartic classification needs a monic polynomial")
    res = factor_over_rationals(resolvent_cubic(f))
    linear = [g for g, mult in res.factors for _ in range(mult) if g.degree == 1]
    if len(linear) == 0:
        if rational_sqrt(Fraction(discriminant(f))) is not None:
            return GaloisGroupTag.of("A4")
        return GaloisGroupTag.of("S4")
    if len(linear) == 3:
        return GaloisGroupTag.of("K4")
    if len(linear) != 1:
        raise InputError("internal: resolvent with two rational roots")
    theta = Fraction(-linear[0].coeffs[0], linear[0].coeffs[1])
    if _quadratic_split_witness(f, theta) is not None:
        return GaloisGroupTag.of("Z4")
    return GaloisGroupTag.of("D8")


def _quadratic_field_square(g1, g2):
    """True when two irreducible quadratics generate the same field."""
    d1 = discriminant(g1)
    d2 = discriminant(g2)
    return rational_sqrt(Fraction(d1 * d2)) is not None


@dataclass(frozen=True)
class Table1Report:
    poly: IntPolynomial
    degree: int
    irreducible: bool
    full_rank: bool
    group: GaloisGroupTag
    table1_row_ok: bool

    def __bool__(self):
        return self.table1_row_ok

    def to_json(self):
        return {
            "poly": self.poly.to_json(),
            "degree": self.degree,
            "irreducible": self.irreducible,
            "full_rank": self.full_rank,
            "group": self.group.tag,
            "table1_row_ok": self.table1_row_ok,
        }


_ROWS = {
    (2, True, True): {"Z2"},
    (3, True, True): {"Z3", "S3"},
    (4, True, True): {"Z4", "K4", "D8", "A4", "S4"},
    (4, False, True): {"Z4", "K4", "D8"},
    (4, False, False): {"Z2", "Z2xZ2"},
}


def table1_check(f, rank_profile=None):
    """Row check for an Anosov polynomial of degree 2, 3 or 4.

    Computes (degree, full rank, irreducibility) and the Galois group of
    the splitting field, then reports whether that group is admissible for
    the computed row.  A combination with no row at all reports False.
    Batch callers that already hold the rank profile of f can pass it to
    skip the second root-lattice computation.
    """
    if not is_anosov_polynomial(f):
        raise InputError("row check requires an Anosov polynomial")
    if f.degree > 4:
        raise InputError("row check covers degree at most 4")
    fl = factor_over_rationals(f)
    irreducible = len(fl.factors) == 1 and fl.factors[0][1] == 1
    if rank_profile is None:
        full_rank = is_full_rank(f)
    else:
        if rank_profile.poly != f:
            raise InputError("rank profile belongs to a different polynomial")
        full_rank = rank_profile.rank == f.degree - 1
    if f.degree == 2:
        group = GaloisGroupTag.of("Z2")
    elif f.degree == 3:
        group = galois_group_cubic(f)
    elif irreducible:
        group = galois_group_quartic(f)
    else:
        quads = [g for g, mult in fl.factors for _ in range(mult)]
        if sorted(g.degree for g in quads) != [2, 2]:
            raise InputError("internal: reducible Anosov quartic with a rational root")
        if _quadratic_field_square(quads[0], quads[1]):
            group = GaloisGroupTag.of("Z2")
        else:
            group = GaloisGroupTag.of("Z2xZ2")
    key = (f.degree, full_rank, irreducible)
    ok = key in _ROWS and group.tag in _ROWS[key]
    return Table1Report(
        poly=f,
        degree=f.degree,
        irreducible=irreducible,
        full_rank=full_rank,
        group=group,
        table1_row_ok=ok,
    )
