"""Exact integer polynomial arithmetic and the Anosov predicates.

Coefficients are stored ascending: ``coeffs[i]`` multiplies x^i.  The JSON
wire format is descending decimal strings, handled by ``to_json``/``from_json``.

The hyperbolicity test is fully exact: unit-circle roots of a real integer
polynomial f with f(0) = +-1 are exactly the roots shared with the reversed
polynomial, and after the substitution y = x + 1/x they become real roots of
an integer polynomial in the open interval (-2, 2), counted by Sturm chains.
No floating point is involved anywhere in the decision.
"""

from __future__ import annotations

import re as _re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from ..errors import InputError

_TERM_RE = _re.compile(
    r"(?P<sign>[+-])?\s*(?P<coeff>\d+)?\s*(?:\*\s*)?(?P<var>[a-zA-Z])?"
    r"(?:\^?\s*(?P<exp>\d+))?\s*"
)


class IntPolynomial:
    """Immutable integer polynomial, ascending coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *args):
        raise AttributeError("IntPolynomial is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_descending(coeffs):
        return IntPolynomial(list(reversed([int(c) for c in coeffs])))

    @staticmethod
    def x_power(k, c=1):
        return IntPolynomial([0] * k + [c])

    @staticmethod
    def parse(text):
        """Parse expressions like ``x^4-10x^2+1`` or ``-x^3 + 2*x - 1``."""
        s = text.replace(" ", "")
        if not s:
            raise InputError("empty polynomial text")
        terms = {}
        var_seen = None
        pos = 0
        while pos < len(s):
            m = _TERM_RE.match(s, pos)
            if not m or m.end() == pos:
                raise InputError(f"cannot parse polynomial text {text!r}")
            sign = -1 if m.group("sign") == "-" else 1
            coeff = m.group("coeff")
            var = m.group("var")
            exp = m.group("exp")
            if var is None and coeff is None:
                raise InputError(f"cannot parse polynomial text {text!r}")
            if var is None and exp is not None:
                raise InputError(f"exponent without variable in {text!r}")
            if var is not None:
                if var_seen is None:
                    var_seen = var
                elif var != var_seen:
                    raise InputError(f"mixed variable names in {text!r}")
            c = int(coeff) if coeff is not None else 1
            e = int(exp) if exp is not None else (1 if var is not None else 0)
            terms[e] = terms.get(e, 0) + sign * c
            pos = m.end()
        deg = max(terms) if terms else 0
        return IntPolynomial([terms.get(i, 0) for i in range(deg + 1)])

    @staticmethod
    def from_json(arr):
        try:
            return IntPolynomial.from_descending([int(str(c)) for c in arr])
        except ValueError as exc:
            raise InputError(f"bad polynomial JSON {arr!r}") from exc

    def to_json(self):
        return [str(c) for c in reversed(self.coeffs)] if self.coeffs else ["0"]

    # -- basics ------------------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else -1

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == 1

    @property
    def leading(self):
        if not self.coeffs:
            return 0
        return self.coeffs[-1]

    @property
    def constant_term(self):
        return self.coeffs[0] if self.coeffs else 0

    def __eq__(self, other):
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x):
        acc = 0 if isinstance(x, int) else Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0] * (n - len(other.coeffs))
        return IntPolynomial([x + y for x, y in zip(a, b)])

    def __neg__(self):
        return IntPolynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial([c * other for c in self.coeffs])
        if self.is_zero or other.is_zero:
            return IntPolynomial([])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e):
        result = IntPolynomial([1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def derivative(self):
        return IntPolynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def reverse(self):
        """x^deg * f(1/x)."""
        return IntPolynomial(list(reversed(self.coeffs)))

    def content(self):
        g = 0
        for c in self.coeffs:
            g = gcd(g, abs(c))
        return g if g else 1

    def primitive(self):
        """Primitive part with positive leading coefficient."""
        if self.is_zero:
            return self
        g = self.content()
        sign = 1 if self.leading > 0 else -1
        return IntPolynomial([sign * c // g for c in self.coeffs])

    def divides(self, other):
        q, r = _rational_divmod(other, self)
        return r == [] and all(x.denominator == 1 for x in q)

    def exact_div(self, other):
        """self / other, raising if the division is not exact over Z."""
        q, r = _rational_divmod(self, other)
        if r or any(x.denominator != 1 for x in q):
            raise InputError("inexact polynomial division")
        return IntPolynomial([int(x) for x in q])

    def to_text(self, var="x"):
        if self.is_zero:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else ("+" if parts else "")
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                xpart = var if i == 1 else f"{var}^{i}"
                body = xpart if mag == 1 else f"{mag}{xpart}"
            parts.append(f"{sign}{body}")
        return "".join(parts)

    def __repr__(self):
        return f"IntPolynomial({self.to_text()})"


def _rational_divmod(num, den):
    """Polynomial division over Q.  Returns (quotient, remainder) coeff lists."""
    if den.is_zero:
        raise InputError("division by the zero polynomial")
    r = [Fraction(c) for c in num.coeffs]
    d = [Fraction(c) for c in den.coeffs]
    dd = len(d) - 1
    lead = d[-1]
    q = [Fraction(0)] * max(0, len(r) - dd)
    while len(r) - 1 >= dd and any(r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) - 1 < dd:
            break
        f = r[-1] / lead
        k = len(r) - 1 - dd
        q[k] = f
        for i in range(dd + 1):
            r[k + i] -= f * d[i]
        r.pop()
    while r and r[-1] == 0:
        r.pop()
    return q, r


def poly_gcd(f, g):
    """Primitive integer gcd via rational Euclid; positive leading coeff."""
    a, b = f, g
    if a.is_zero:
        return b.primitive()
    if b.is_zero:
        return a.primitive()
    ra = [Fraction(c) for c in a.coeffs]
    rb = [Fraction(c) for c in b.coeffs]

    def rem(u, v):
        r = u[:]
        dd = len(v) - 1
        lead = v[-1]
        while len(r) - 1 >= dd:
            while r and r[-1] == 0:
                r.pop()
            if len(r) - 1 < dd or not any(r):
                break
            f_ = r[-1] / lead
            k = len(r) - 1 - dd
            for i in range(dd + 1):
                r[k + i] -= f_ * v[i]
            r.pop()
        while r and r[-1] == 0:
            r.pop()
        return r

    while any(rb):
        ra, rb = rb, rem(ra, rb)
    # clear denominators, return primitive integer polynomial
    den = 1
    for c in ra:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in ra]
    return IntPolynomial(ints).primitive()


def squarefree_part(f):
    if f.degree <= 0:
        return f.primitive()
    return f.exact_div_rational(poly_gcd(f, f.derivative()))


def _exact_div_rational(self, other):
    """Division known to be exact over Q; result normalized primitive monic-ish."""
    q, r = _rational_divmod(self, other)
    if r:
        raise InputError("inexact polynomial division")
    den = 1
    for c in q:
        den = den * c.denominator // gcd(den, c.denominator)
    return IntPolynomial([int(c * den) for c in q]).primitive()


IntPolynomial.exact_div_rational = _exact_div_rational


# ---------------------------------------------------------------------------
# power sums and composed operations


def power_sums(f, count):
    """Newton power sums p_1..p_count of the roots of monic f (exact ints)."""
    if not f.is_monic:
        raise InputError("power sums require a monic polynomial")
    n = f.degree
    # c[i] = coefficient of x^(n-i), so c[0] = 1
    c = list(reversed(f.coeffs))
    p = [0] * (count + 1)
    for k in range(1, count + 1):
        if k <= n:
            acc = -k * c[k]
        else:
            acc = 0
        for i in range(1, min(k, n + 1)):
            acc -= c[i] * p[k - i]
        p[k] = acc
    return p[1:]


def from_power_sums(p, n):
    """Monic degree-n polynomial with given power sums (inverse Newton)."""
    c = [0] * (n + 1)
    c[0] = 1
    for k in range(1, n + 1):
        acc = p[k - 1]
        for i in range(1, k):
            acc += c[i] * p[k - 1 - i]
        if acc % k != 0:
            raise InputError("power sums are not consistent with integer coefficients")
        c[k] = -acc // k
    return IntPolynomial(list(reversed(c)))


def composed_power(f, e):
    """Monic polynomial whose roots are the e-th powers of the roots of f."""
    if e < 1:
        raise InputError("composed_power requires a positive exponent")
    if not f.is_monic:
        raise InputError("composed_power requires a monic polynomial")
    n = f.degree
    if n <= 0:
        return f
    if e == 1:
        return f
    p = power_sums(f, n * e)
    return from_power_sums([p[k * e - 1] for k in range(1, n + 1)], n)


def composed_product(f, g):
    """Monic polynomial whose roots are all products of a root of f and one of g."""
    if not (f.is_monic and g.is_monic):
        raise InputError("composed_product requires monic polynomials")
    n, m = f.degree, g.degree
    if n <= 0:
        return IntPolynomial([1])
    if m <= 0:
        return IntPolynomial([1])
    total = n * m
    pf = power_sums(f, total)
    pg = power_sums(g, total)
    return from_power_sums([pf[k] * pg[k] for k in range(total)], total)


# ---------------------------------------------------------------------------
# resultant / discriminant


def sylvester_resultant(f, g):
    from ..linalg import det_bareiss

    n, m = f.degree, g.degree
    if n < 0 or m < 0:
        return 0
    if n == 0:
        return f.coeffs[0] ** m
    if m == 0:
        return g.coeffs[0] ** n
    size = n + m
    rows = []
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    for i in range(m):
        rows.append([0] * i + fc + [0] * (size - n - 1 - i))
    for i in range(n):
        rows.append([0] * i + gc + [0] * (size - m - 1 - i))
    return det_bareiss(rows)


def discriminant(f):
    n = f.degree
    if n < 1:
        raise InputError("discriminant requires degree >= 1")
    res = sylvester_resultant(f, f.derivative())
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    disc_times_lead = sign * res
    if disc_times_lead % f.leading != 0:
        raise InputError("discriminant is not integral for this input")
    return disc_times_lead // f.leading


# ---------------------------------------------------------------------------
# Sturm chains


def sturm_chain(f):
    # only positive constant rescaling is allowed: sign sequences must survive
    chain = [f.primitive_signed(), f.derivative().primitive_signed()]
    while chain[-1].degree >= 1:
        _, r = _rational_divmod(chain[-2], chain[-1])
        if not r:
            break
        den = 1
        for c in r:
            den = den * c.denominator // gcd(den, c.denominator)
        chain.append(IntPolynomial([int(-c * den) for c in r]).primitive_signed())
    return chain


def _primitive_signed(self):
    """Divide by positive content, keeping the sign of the leading coefficient."""
    if self.is_zero:
        return self
    g = self.content()
    return IntPolynomial([c // g for c in self.coeffs])


IntPolynomial.primitive_signed = _primitive_signed


def _sign_changes(values):
    signs = [v for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def sturm_count_open(f, a, b):
    """Number of distinct real roots of f in (a, b]; f need not be squarefree."""
    g = squarefree_part(f)
    chain = sturm_chain(g)
    va = [p(Fraction(a)) for p in chain]
    vb = [p(Fraction(b)) for p in chain]
    return _sign_changes(va) - _sign_changes(vb)


def count_real_roots(f, a, b):
    """Distinct real roots in the open interval (a, b); endpoints must not be roots."""
    fa, fb = f(Fraction(a)), f(Fraction(b))
    if fa == 0 or fb == 0:
        raise InputError("count_real_roots endpoints must not be roots")
    return sturm_count_open(f, a, b)


# ---------------------------------------------------------------------------
# Anosov predicates


def is_integer_like(f):
    """Monic integer polynomial with constant term +-1 (and degree >= 1)."""
    return f.degree >= 1 and f.is_monic and f.constant_term in (1, -1)


def _unit_circle_factor(f):
    """Factor of f carrying exactly the unit-circle roots, already +-1 checked.

    Needs f(1) != 0 != f(-1) and f(0) != 0.  Every root z with |z| = 1
    satisfies conj(z) = 1/z, and conj(z) is a root because f is real, so z is
    a common root of f and its reverse.  Conversely a common root z satisfies
    both f(z) = 0 and f(1/z) = 0; the gcd collects them all (a superset of
    the unit-circle roots, but stable under z -> 1/z, which is what the
    substitution step needs).
    """
    return poly_gcd(f, f.reverse())


def unit_circle_root_count(f):
    """Exact number of distinct roots of f on the complex unit circle."""
    if f.degree < 1:
        return 0
    if f.constant_term == 0:
        f = IntPolynomial(f.coeffs[next(i for i, c in enumerate(f.coeffs) if c):])
    count = 0
    one, mone = f(1), f(-1)
    work = f
    if one == 0:
        count += 1
        while work(1) == 0:
            work = work.exact_div_rational(IntPolynomial([-1, 1]))
    if mone == 0:
        count += 1
        while work(-1) == 0:
            work = work.exact_div_rational(IntPolynomial([1, 1]))
    h = _unit_circle_factor(squarefree_part(work))
    if h.degree <= 0:
        return count
    # h is palindromic of even degree: minus-type would force h(1) = 0 and an
    # odd-degree palindrome forces h(-1) = 0, both excluded above.
    if h.reverse() == -h or h.degree % 2 == 1:
        raise InputError("internal: unexpected reciprocal factor shape")
    m = h.degree // 2
    # substitute y = x + 1/x:  h(x)/x^m = a_m + sum a_{m+j} (x^j + x^-j)
    # with x^j + x^-j = P_j(y), P_0 = 2, P_1 = y, P_j = y P_{j-1} - P_{j-2}
    pj_prev = IntPolynomial([2])
    pj = IntPolynomial([0, 1])
    acc = IntPolynomial([h.coeffs[m]])
    for j in range(1, m + 1):
        acc = acc + h.coeffs[m + j] * pj
        pj_prev, pj = pj, IntPolynomial([0, 1]) * pj - pj_prev
    bigh = acc
    if bigh(2) == 0 or bigh(-2) == 0:
        raise InputError("internal: unit-circle transform has boundary root")
    # each real root of bigh in (-2, 2) corresponds to one conjugate pair on
    # the circle (z and conj z), i.e. two distinct roots of f
    pairs = count_real_roots(bigh, -2, 2)
    return count + 2 * pairs


def is_hyperbolic(f):
    """True when no complex root of f has modulus exactly 1.  Exact."""
    if f.degree < 1:
        raise InputError("hyperbolicity requires degree >= 1")
    return unit_circle_root_count(f) == 0


def is_anosov_polynomial(f):
    """Monic, constant term +-1, degree >= 2, no root of modulus 1."""
    return f.degree >= 2 and is_integer_like(f) and is_hyperbolic(f)


# ---------------------------------------------------------------------------
# factorization (delegated to sympy behind this exact contract)


@dataclass(frozen=True)
class FactorList:
    factors: tuple  # of (IntPolynomial, multiplicity)
    unit: int

    def expand(self):
        acc = IntPolynomial([self.unit])
        for poly, mult in self.factors:
            acc = acc * poly ** mult
        return acc


def factor_over_rationals(f):
    """Irreducible factorization over Q, deterministic order.

    Order: by degree, then lexicographically on the descending coefficient
    tuple.  Factors are primitive with positive leading coefficient; the unit
    carries the sign so that unit * prod(factors^mult) == f exactly.
    """
    if f.is_zero:
        raise InputError("cannot factor the zero polynomial")
    import sympy

    x = sympy.Symbol("x")
    expr = sympy.Poly(list(reversed(f.coeffs)), x, domain="ZZ")
    _, raw = sympy.factor_list(expr)
    factors = []
    for poly, mult in raw:
        p = IntPolynomial(list(reversed([int(c) for c in sympy.Poly(poly, x).all_coeffs()])))
        if p.leading < 0:
            p = -p
        factors.append((p, int(mult)))
    factors.sort(key=lambda fm: (fm[0].degree, tuple(reversed(fm[0].coeffs))))
    prod = IntPolynomial([1])
    for poly, mult in factors:
        prod = prod * poly ** mult
    # f = unit * prod with unit a nonzero integer (content with sign)
    if prod.degree != f.degree:
        raise InputError("internal: factorization degree mismatch")
    if prod.leading == 0 or f.leading % prod.leading != 0:
        raise InputError("internal: factorization unit is not integral")
    unit = f.leading // prod.leading
    if (prod * unit) != f:
        raise InputError("internal: factorization does not multiply back")
    return FactorList(tuple(factors), unit)


def irreducible_factors_are_anosov(f):
    """Per-factor Anosov report.  Returns (all_anosov, [(factor, mult, is_anosov)])."""
    fl = factor_over_rationals(f)
    rows = []
    ok = True
    for poly, mult in fl.factors:
        good = is_anosov_polynomial(poly)
        rows.append((poly, mult, good))
        ok = ok and good
    return ok, rows


# ---------------------------------------------------------------------------
# characteristic polynomial wrapper


@dataclass(frozen=True)
class CharPoly:
    fractions: tuple  # ascending Fraction coefficients, monic
    integral: bool

    @property
    def integer_poly(self):
        if not self.integral:
            raise InputError("characteristic polynomial is not integral")
        return IntPolynomial([int(c) for c in self.fractions])

    def to_json(self):
        from ..linalg import format_fraction

        return [format_fraction(c) for c in reversed(self.fractions)]


def char_poly(matrix_rows):
    """Characteristic polynomial of a rational square matrix, integrality flagged."""
    from ..linalg import char_poly_fractions

    cs = char_poly_fractions(matrix_rows)
    integral = all(c.denominator == 1 for c in cs)
    return CharPoly(tuple(cs), integral)
