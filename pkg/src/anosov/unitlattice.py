"""Multiplicative relations among polynomial roots, decided exactly.

A relation is an integer exponent vector z with prod lambda_i^{z_i} = 1 over
the distinct roots of a monic integer polynomial, indexed in the canonical
order of ``isolate_roots``.  Verification never trusts floating point: a
candidate is refuted by a certified interval product that excludes 1, and
confirmed through the orbit polynomial

    P(X) = prod_{sigma} (X - prod_i lambda_{sigma(i)}^{z_i})

taken over all permutations that shuffle roots within each irreducible
factor.  P has integer coefficients and is computed from exact power sums:
each power sum factors through the blocks as a product of matrix permanents,
and each permanent is expanded by Ryser's formula transposed so that every
term is a norm from Z[x]/(g), an integer determinant.  The true product is a
root of P, so P(1) != 0 refutes; if (X-1) divides P to full depth the whole
orbit is 1 and the relation holds; otherwise a root-separation bound for the
stripped cofactor turns a sufficiently tight interval around 1 into a proof.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import InputError, PrecisionCapError
from .linalg import det_bareiss, hnf_rows, in_lattice, lll_reduce, preimage_lattice
from .polycore.boxes import Box, eval_poly_box
from .polycore.isolation import PRECISION_CAP_BITS, isolate_roots
from .polycore.poly import (
    IntPolynomial,
    composed_power,
    factor_over_rationals,
    from_power_sums,
    is_anosov_polynomial,
    is_integer_like,
    squarefree_part,
)

# ---------------------------------------------------------------------------
# root systems (cached isolation + factor blocks)


class RootSystem:
    """Isolated roots of a monic polynomial, grouped by irreducible factor."""

    def __init__(self, poly):
        if not poly.is_monic or poly.degree < 1:
            raise InputError("relation machinery requires a monic polynomial of degree >= 1")
        self.poly = poly
        self.roots = isolate_roots(poly, bits=64)
        self.count = len(self.roots)
        by_factor = {}
        for idx, root in enumerate(self.roots):
            by_factor.setdefault(root.parent, []).append(idx)
        order = sorted(by_factor, key=lambda g: (g.degree, tuple(reversed(g.coeffs))))
        self.blocks = [(g, tuple(by_factor[g])) for g in order]

    def refine_all(self, bits):
        for root in self.roots:
            root.refine_to(bits)

    def monomial_box(self, exponents, bits):
        """Certified box around prod lambda_i^{z_i} at roughly 2^-bits width."""
        self.refine_all(bits)
        acc = Box.point(Fraction(1))
        for root, e in zip(self.roots, exponents):
            if e == 0:
                continue
            acc = acc * _box_pow(root.box, e, bits)
            acc = acc.outward(bits + 64)
        return acc

    def modulus_exceeds_one(self, idx, start_bits=96):
        """Exact |lambda_idx| > 1 test; requires no root on the unit circle."""
        bits = start_bits
        while True:
            sq = self.roots[idx].box.abs_square()
            if sq.lo > 1:
                return True
            if sq.hi < 1:
                return False
            bits *= 2
            if bits > PRECISION_CAP_BITS:
                raise PrecisionCapError("could not separate a root modulus from 1")
            self.roots[idx].refine_to(bits)

    def orbit_polynomial(self, exponents):
        """Monic integer P(X) vanishing on the block-permutation orbit."""
        degree = 1
        blocks = []
        for g, idxs in self.blocks:
            degree *= math.factorial(len(idxs))
            w = [exponents[i] for i in idxs]
            steps = [_xpow_mod(e, g) for e in w]
            blocks.append((g, steps, [list(s) for s in steps]))
        psums = []
        for t in range(1, degree + 1):
            if t > 1:
                for g, steps, current in blocks:
                    for i in range(len(current)):
                        current[i] = _mul_mod(current[i], steps[i], g)
            pt = 1
            for g, _, current in blocks:
                pt *= _block_permanent(current, g)
            psums.append(pt)
        return from_power_sums(psums, degree)


_SYSTEMS = {}


def _system(poly):
    key = poly.coeffs
    rs = _SYSTEMS.get(key)
    if rs is None:
        rs = RootSystem(poly)
        _SYSTEMS[key] = rs
    return rs


def _box_pow(box, e, bits):
    if e == 0:
        return Box.point(Fraction(1))
    if e < 0:
        box = Box.point(Fraction(1)) / box
        e = -e
    acc = None
    base = box
    while e:
        if e & 1:
            acc = base if acc is None else (acc * base).outward(bits + 64)
        e >>= 1
        if e:
            base = (base * base).outward(bits + 64)
    return acc


# ---------------------------------------------------------------------------
# arithmetic in Z[x]/(g) on plain integer coefficient lists


def _reduce_mod(coeffs, g):
    m = g.degree
    work = list(coeffs)
    for k in range(len(work) - 1, m - 1, -1):
        c = work[k]
        if c:
            for i in range(m + 1):
                work[k - m + i] -= c * g.coeffs[i]
        work.pop()
    while len(work) < m:
        work.append(0)
    return work


def _mul_mod(a, b, g):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _reduce_mod(out, g)


def _xpow_mod(e, g):
    m = g.degree
    if e == 0:
        return [1] + [0] * (m - 1)
    if e > 0:
        base = _reduce_mod([0, 1], g)
    else:
        g0 = g.constant_term
        if g0 not in (1, -1):
            raise InputError("negative exponents require a factor with constant term +-1")
        # g(x) - g(0) = x * u(x), so x * (-g0 * u(x)) = g0^2 = 1 mod g
        base = [-g0 * c for c in g.coeffs[1:]]
        base = _reduce_mod(base, g)
        e = -e
    acc = None
    while e:
        if e & 1:
            acc = base[:] if acc is None else _mul_mod(acc, base, g)
        e >>= 1
        if e:
            base = _mul_mod(base, base, g)
    return acc


def _norm_mod(h, g):
    """prod of h(lambda) over the roots of monic g: det of multiplication by h."""
    m = g.degree
    cols = []
    cur = _reduce_mod(h, g)
    for _ in range(m):
        cols.append(cur)
        cur = _mul_mod(cur, [0, 1], g)
    rows = [[cols[j][i] for j in range(m)] for i in range(m)]
    return det_bareiss(rows)


def _block_permanent(current, g):
    """Permanent of [lambda_a^{t w_i}]_{i,a} over the roots of g, via Ryser
    on the transposed matrix: every inner product is a norm, hence exact."""
    d = len(current)
    m = g.degree
    total = 0
    for mask in range(1, 1 << d):
        h = [0] * m
        size = 0
        for i in range(d):
            if (mask >> i) & 1:
                size += 1
                ri = current[i]
                for k in range(m):
                    h[k] += ri[k]
        term = _norm_mod(h, g)
        total += term if size % 2 == 0 else -term
    return total if d % 2 == 0 else -total


# ---------------------------------------------------------------------------
# exact relation verification


def _validated_exponents(rs, exponents):
    z = [int(e) for e in exponents]
    if len(z) != rs.count:
        raise InputError(
            f"expected {rs.count} exponents (one per distinct root), got {len(z)}")
    if any(e < 0 for e in z) and not is_integer_like(rs.poly):
        raise InputError("negative exponents require constant term +-1")
    return z


def verify_relation(f, exponents):
    """Exactly decide prod lambda_i^{z_i} == 1 over the distinct roots of f."""
    rs = _system(f)
    z = _validated_exponents(rs, exponents)
    if all(e == 0 for e in z):
        return True
    if len(set(z)) == 1:
        prod = 1
        for g, _ in rs.blocks:
            prod *= (-1) ** g.degree * g.constant_term
        return prod ** abs(z[0]) == 1
    box = rs.monomial_box(z, 128)
    if not box.contains_point(Fraction(1)):
        return False
    orbit = rs.orbit_polynomial(z)
    if orbit(1) != 0:
        return False
    stripped = orbit
    x_minus_1 = IntPolynomial([-1, 1])
    while stripped.degree > 0 and stripped(1) == 0:
        stripped = stripped.exact_div(x_minus_1)
    if stripped.degree <= 0:
        return True
    # separation: every root of the stripped cofactor is at distance at least
    # delta from 1 (|R(1)| = prod |1-rho|, each other factor <= 2 * Mahler)
    delta = Fraction(abs(stripped(1)),
                     (1 << (stripped.degree - 1)) * sum(abs(c) for c in stripped.coeffs))
    bits = 256
    while True:
        box = rs.monomial_box(z, bits)
        if not box.contains_point(Fraction(1)):
            return False
        if box.sup_dist_sq_to(Fraction(1)) < delta * delta:
            return True
        bits *= 2
        if bits > PRECISION_CAP_BITS:
            raise PrecisionCapError("relation verification exceeded the precision cap")


def monomial_min_poly(f, exponents):
    """Minimal polynomial over Q of prod lambda_i^{z_i} (distinct roots of f)."""
    rs = _system(f)
    z = _validated_exponents(rs, exponents)
    orbit = squarefree_part(rs.orbit_polynomial(z))
    candidates = [g for g, _ in factor_over_rationals(orbit).factors]
    bits = 128
    while len(candidates) > 1:
        box = rs.monomial_box(z, bits)
        survivors = [g for g in candidates
                     if eval_poly_box(g.coeffs, box).contains_zero()]
        if survivors:
            candidates = survivors
        if len(candidates) > 1:
            bits *= 2
            if bits > PRECISION_CAP_BITS:
                raise PrecisionCapError("could not separate minimal polynomial candidates")
    return candidates[0]


def monomial_is_rational(f, exponents):
    """For integer-like f the monomial is a unit, hence rational iff it is +-1."""
    rs = _system(f)
    z = _validated_exponents(rs, exponents)
    if not is_integer_like(rs.poly):
        raise InputError("rationality shortcut requires constant term +-1")
    return verify_relation(f, [2 * e for e in z])


def even_degree_check(f, exponents):
    """True when the monomial is rational or its minimal polynomial has even degree."""
    if monomial_is_rational(f, exponents):
        return True
    return monomial_min_poly(f, exponents).degree % 2 == 0


# ---------------------------------------------------------------------------
# relation lattice


@dataclass(frozen=True)
class RelationLattice:
    dim: int
    basis: tuple          # HNF rows, each a tuple of ints
    completeness: str     # "certified" | "heuristic"

    @property
    def rank(self):
        return len(self.basis)

    def contains(self, vector):
        v = list(vector)
        if len(v) != self.dim:
            raise InputError("vector length does not match lattice dimension")
        if not self.basis:
            return all(x == 0 for x in v)
        return in_lattice(v, [list(b) for b in self.basis])

    def to_json(self):
        return {
            "dim": self.dim,
            "basis": [list(b) for b in self.basis],
            "completeness": self.completeness,
        }


def _log_arg_rows(rs, prec, bound):
    import mpmath

    d = rs.count
    rs.refine_all(prec + 16)
    rows = []
    with mpmath.workprec(prec + 48):
        scale = mpmath.mpf(2) ** prec
        for i, root in enumerate(rs.roots):
            mr, mi = root.box.mid
            re = mpmath.mpf(mr.numerator) / mpmath.mpf(mr.denominator)
            im = mpmath.mpf(mi.numerator) / mpmath.mpf(mi.denominator)
            log_mod = mpmath.log(mpmath.hypot(re, im))
            arg = mpmath.atan2(im, re)
            rows.append([0] * i + [1] + [0] * (d - 1 - i)
                        + [int(mpmath.nint(scale * log_mod)),
                           int(mpmath.nint(scale * arg))])
        rows.append([0] * d + [0, int(mpmath.nint(scale * 2 * mpmath.pi))])
    return rows


def _lll_candidates(rs, prec, bound):
    d = rs.count
    rows = _log_arg_rows(rs, prec, bound)
    reduced = lll_reduce(rows)
    threshold = 1 << (prec // 2)
    found = set()
    for row in reduced:
        z = row[:d]
        if all(v == 0 for v in z):
            continue
        if max(abs(v) for v in z) > bound:
            continue
        if abs(row[d]) >= threshold or abs(row[d + 1]) >= threshold:
            continue
        if z[next(i for i, v in enumerate(z) if v)] < 0:
            z = [-v for v in z]
        found.add(tuple(z))
    return found


def relation_lattice(f, bound=64, start_prec=128):
    """HNF basis of verified relations among the distinct roots of f.

    Candidates come from LLL applied to high-precision logarithms (with a 2*pi
    torsion row); every reported basis vector is verified exactly, so the
    lattice is always a sublattice of the true relation lattice.  completeness
    is "certified" when the basis is unchanged across two precision doublings
    with every candidate decided, else "heuristic".
    """
    rs = _system(f)
    d = rs.count
    mults = [root.multiplicity for root in rs.roots]
    seeds = {tuple(mults), tuple(2 * m for m in mults)}
    verified = set()
    rejected = set()

    def decide(candidates):
        for z in candidates:
            if z in verified or z in rejected:
                continue
            if verify_relation(f, list(z)):
                verified.add(z)
            else:
                rejected.add(z)

    def basis_now():
        if not verified:
            return ()
        rows = hnf_rows([list(z) for z in verified])
        return tuple(tuple(r) for r in rows)

    decide(seeds)
    prec = start_prec
    decide(_lll_candidates(rs, prec, bound))
    h0 = basis_now()
    decide(_lll_candidates(rs, prec * 2, bound))
    h1 = basis_now()
    decide(_lll_candidates(rs, prec * 4, bound))
    h2 = basis_now()
    completeness = "certified" if h0 == h1 == h2 else "heuristic"
    return RelationLattice(dim=d, basis=h2, completeness=completeness)


# ---------------------------------------------------------------------------
# rank profile


@dataclass(frozen=True)
class AnosovProfile:
    poly: IntPolynomial
    rank: int
    d: int
    normalization_power: int
    lattice: RelationLattice
    completeness: str
    root_order: tuple     # CertifiedRoot list snapshot

    def to_json(self):
        return {
            "poly": self.poly.to_json(),
            "rank": self.rank,
            "d": self.d,
            "normalization_power": self.normalization_power,
            "lattice": [list(b) for b in self.lattice.basis],
            "completeness": self.completeness,
            "root_order": [r.box.rounded().to_json() for r in self.root_order],
        }


def rank_of_roots(f, bound=64):
    """Free rank of the multiplicative group generated by the distinct roots."""
    if not is_integer_like(f):
        raise InputError("rank profile requires a monic polynomial with constant term +-1")
    rs = _system(f)
    lattice = relation_lattice(f, bound=bound)
    rank = rs.count - lattice.rank
    product = (-1) ** f.degree * f.constant_term
    normalization = 1 if product == 1 else 2
    # d is the gcd of coordinate sums over exponent vectors (one coordinate
    # per root, with multiplicity) whose monomial equals 1, taken after the
    # smallest power normalization that makes the root product +1.  When the
    # product is -1 the exponent vectors of the squared roots are exactly
    # {z : 2z in K}.
    positions, pos_basis = _position_lattice(rs, lattice)
    if normalization == 2:
        pos_basis = _saturation(pos_basis, 2, len(positions))
    dval = 0
    for b in pos_basis:
        dval = gcd(dval, abs(sum(b)))
    if dval == 0:
        raise InputError("internal: relation lattice misses the modulus relation")
    return AnosovProfile(
        poly=f,
        rank=rank,
        d=dval,
        normalization_power=normalization,
        lattice=lattice,
        completeness=lattice.completeness,
        root_order=tuple(rs.roots),
    )


def is_full_rank(f, bound=64):
    return rank_of_roots(f, bound=bound).rank == f.degree - 1


# ---------------------------------------------------------------------------
# quartic rank cases


@dataclass(frozen=True)
class QuarticRankCase:
    case: str             # "FullRank" | "RankTwo" | "RankOne"
    power: int
    k_exp: int | None
    l_exp: int | None
    d: int

    def to_json(self):
        return {"case": self.case, "power": self.power,
                "k_exp": self.k_exp, "l_exp": self.l_exp, "d": self.d}


_PARTITIONS = (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))
_MAX_CASE_POWER = 12


def _position_lattice(rs, lattice):
    """Relation lattice on the root positions (multiplicity expanded)."""
    positions = []
    for j, root in enumerate(rs.roots):
        positions.extend([j] * root.multiplicity)
    basis = [list(b) for b in lattice.basis]
    if len(positions) == rs.count:
        return positions, basis
    collapse = [[1 if positions[p] == j else 0 for p in range(len(positions))]
                for j in range(rs.count)]
    return positions, preimage_lattice(collapse, basis)


def _saturation(basis, m, dim):
    """Basis of {z : m*z in L}."""
    scaled = [[m if i == j else 0 for j in range(dim)] for i in range(dim)]
    return preimage_lattice(scaled, basis)


def _plane_intersection(basis, a, c, dim):
    """Primitive generator of the sublattice supported on coordinates a and c."""
    if not basis:
        return None
    others = [i for i in range(dim) if i not in (a, c)]
    # integer combinations of basis rows vanishing on the other coordinates
    from .linalg import integer_kernel

    constraint = [[row[i] for row in basis] for i in others]
    combos = integer_kernel(constraint) if others else [
        [1 if i == j else 0 for j in range(len(basis))] for i in range(len(basis))]
    vecs = []
    for combo in combos:
        v = [sum(x * row[i] for x, row in zip(combo, basis)) for i in range(dim)]
        if any(v[i] for i in (a, c)):
            vecs.append([v[a], v[c]])
    if not vecs:
        return None
    reduced = hnf_rows(vecs)
    if not reduced:
        return None
    if len(reduced) > 1:
        raise InputError("internal: two independent single-root power relations")
    s, t = reduced[0]
    if s < 0 or (s == 0 and t < 0):
        s, t = -s, -t
    return s, t


def classify_quartic_rank_case(f, bound=64):
    """Rank case of an Anosov quartic with the witnessing power and exponents."""
    if f.degree != 4:
        raise InputError("rank case classification requires degree 4")
    if not is_anosov_polynomial(f):
        raise InputError("rank case classification requires an Anosov polynomial")
    rs = _system(f)
    lattice = relation_lattice(f, bound=bound)
    positions, pos_basis = _position_lattice(rs, lattice)
    rank_free = 4 - len(pos_basis)
    product = (-1) ** f.degree * f.constant_term
    if rank_free == 3:
        return QuarticRankCase("FullRank", 1 if product == 1 else 2, None, None, 4)
    if rank_free not in (1, 2):
        raise InputError(f"internal: unexpected free rank {rank_free} for an Anosov quartic")

    def pairing_holds(sat, partition):
        for (p, q) in partition:
            vec = [0] * 4
            vec[p] += 1
            vec[q] += 1
            if not in_lattice(vec, sat):
                return False
        return True

    if rank_free == 2:
        for m in range(1, _MAX_CASE_POWER + 1):
            sat = _saturation(pos_basis, m, 4)
            for partition in _PARTITIONS:
                if pairing_holds(sat, partition):
                    return QuarticRankCase("RankTwo", m, None, None, 2)
        raise InputError("no pairing structure found within the power bound")

    big = [p for p in range(4) if rs.modulus_exceeds_one(positions[p])]
    if len(big) != 2:
        raise InputError("rank-one case requires exactly two roots outside the unit circle")
    a, c = big
    for m in range(1, _MAX_CASE_POWER + 1):
        sat = _saturation(pos_basis, m, 4)
        if not any(pairing_holds(sat, partition) for partition in _PARTITIONS):
            continue
        plane = _plane_intersection(sat, a, c, 4)
        if plane is None:
            continue
        s, t = plane
        if gcd(abs(s), abs(t)) != 1:
            # generator not primitive at this power: the exponent pair only
            # becomes coprime after a further power, so keep searching
            continue
        k_exp, l_exp = s, -t
        if k_exp <= 0 or l_exp <= 0:
            raise InputError("internal: rank-one exponents are not both positive")
        dval = 2 if (k_exp + l_exp) % 2 == 0 else 1
        return QuarticRankCase("RankOne", m, k_exp, l_exp, dval)
    raise InputError("no rank-one structure found within the power bound")


def normalized_power_for_rank1(f, max_power=64):
    """Smallest m with composed_power(f, m) a product of quadratic Anosov factors."""
    if not is_anosov_polynomial(f):
        raise InputError("normalization requires an Anosov polynomial")
    for m in range(1, max_power + 1):
        fl = factor_over_rationals(composed_power(f, m))
        if all(g.degree == 2 and is_anosov_polynomial(g) for g, _ in fl.factors):
            return m
    raise InputError(f"no power up to {max_power} splits into quadratic factors")
