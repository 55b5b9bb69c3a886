"""Exact polynomial layer: parsing, resultant constructions, root counting,
certified isolation.

Independent oracles: sympy (resultants, discriminants, factorisation) and
mpmath at high working precision for numeric cross-checks.  Hand-derived
values are marked inline.
"""

import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from anosov.errors import InputError, PrecisionCapError
from anosov.polycore import (
    Box,
    Interval,
    IntPolynomial,
    PRECISION_CAP_BITS,
    char_poly,
    composed_power,
    composed_product,
    count_real_roots,
    count_roots_by_modulus,
    discriminant,
    eval_poly_box,
    factor_over_rationals,
    from_power_sums,
    irreducible_factors_are_anosov,
    is_anosov_polynomial,
    is_hyperbolic,
    is_integer_like,
    isolate_roots,
    poly_gcd,
    power_sums,
    squarefree_part,
    sturm_count_open,
    sylvester_resultant,
    unit_circle_root_count,
)

X = sympy.symbols("x")


def P(text):
    return IntPolynomial.parse(text)


def D(*descending):
    return IntPolynomial.from_descending(list(descending))


def to_sympy(f):
    return sympy.Poly(list(reversed(f.coeffs)), X)


def random_poly(rng, degree, bound, monic=True):
    coeffs = [rng.randint(-bound, bound) for _ in range(degree)]
    lead = 1 if monic else rng.choice([c for c in range(-bound, bound + 1) if c])
    return IntPolynomial.from_descending([lead] + coeffs)


# ---------------------------------------------------------------------------
# parsing and basic structure


def test_parse_matches_descending():
    assert P("x^2-3x+1") == D(1, -3, 1)
    assert P("x^4 - 10x^2 + 1") == D(1, 0, -10, 0, 1)
    assert P("x^3-x^2-2x+1") == D(1, -1, -2, 1)
    assert P("-x+5") == D(-1, 5)
    assert P("7") == D(7)
    assert P("x") == D(1, 0)


def test_parse_rejects_garbage():
    for bad in ("", "x^-2+1", "x**2+1y", "3/2x+1", "x^2++1"):
        with pytest.raises(InputError):
            P(bad)


def test_text_roundtrip():
    rng = random.Random(11)
    for _ in range(40):
        f = random_poly(rng, rng.randint(0, 6), 9, monic=False)
        assert P(f.to_text()) == f


def test_json_roundtrip():
    f = D(1, 0, -10, 0, 1)
    assert f.to_json() == ["1", "0", "-10", "0", "1"]
    assert IntPolynomial.from_json(f.to_json()) == f


def test_degree_leading_constant():
    f = D(2, 0, -3)
    assert f.degree == 2 and f.leading == 2 and f.constant_term == -3
    assert D(5).degree == 0
    assert IntPolynomial.x_power(3) == D(1, 0, 0, 0)


def test_derivative():
    assert P("x^4-10x^2+1").derivative() == D(4, 0, -20, 0)
    assert D(7).derivative().is_zero


# ---------------------------------------------------------------------------
# gcd, squarefree part, factorisation


def _mul(f, g):
    fs, gs = to_sympy(f), to_sympy(g)
    return IntPolynomial.from_descending([int(c) for c in (fs * gs).all_coeffs()])


def test_poly_gcd_common_factor():
    f, g = P("x^2-3x+1"), P("x^2-5x+1")
    assert poly_gcd(f, g) == D(1)
    assert poly_gcd(_mul(f, g), _mul(f, P("x^3-x-1"))) == f


def test_squarefree_part():
    f, g = P("x^2-3x+1"), P("x^3-x-1")
    sq = _mul(_mul(f, f), g)
    assert squarefree_part(sq) == _mul(f, g)
    assert squarefree_part(g) == g


def test_factor_over_rationals_expand_roundtrip():
    rng = random.Random(23)
    for _ in range(25):
        f = random_poly(rng, rng.randint(1, 5), 6)
        fl = factor_over_rationals(f)
        assert fl.expand() == f
        for p, mult in fl.factors:
            assert mult >= 1
            assert to_sympy(p).is_irreducible


def test_factor_detects_multiplicity():
    f = _mul(P("x^2-3x+1"), P("x^2-3x+1"))
    fl = factor_over_rationals(f)
    assert fl.factors == ((P("x^2-3x+1"), 2),)


# ---------------------------------------------------------------------------
# resultant constructions


def test_composed_power_small_oracles():
    # (3+sqrt(5))/2 squared has trace 7, cubed has trace 18; both norm 1
    assert composed_power(P("x^2-3x+1"), 2) == P("x^2-7x+1")
    assert composed_power(P("x^2-3x+1"), 3) == P("x^2-18x+1")
    assert composed_power(P("x^2-x-1"), 2) == P("x^2-3x+1")
    f = P("x^4-10x^2+1")
    assert composed_power(f, 1) == f


def test_composed_power_matches_sympy_resultant():
    rng = random.Random(7)
    y = sympy.symbols("y")
    for _ in range(12):
        f = random_poly(rng, rng.randint(2, 4), 4)
        e = rng.choice([2, 3])
        got = composed_power(f, e)
        res = sympy.resultant(
            to_sympy(f).as_expr().subs(X, y), X - y**e, y
        )
        want = sympy.Poly(sympy.expand(res), X).all_coeffs()
        assert [int(c) for c in want] == [
            int(c) for c in reversed(got.coeffs)
        ]


def test_composed_product_matches_sympy_resultant():
    rng = random.Random(13)
    y = sympy.symbols("y")
    for _ in range(12):
        f = random_poly(rng, rng.randint(1, 3), 3)
        g = random_poly(rng, rng.randint(1, 3), 3)
        got = composed_product(f, g)
        # roots of the composed product are products of a root of f and of g
        res = sympy.resultant(
            to_sympy(f).as_expr().subs(X, y),
            y ** g.degree * to_sympy(g).as_expr().subs(X, X / y),
            y,
        )
        want = sympy.Poly(sympy.expand(res), X)
        lead = want.all_coeffs()[0]
        got_lead = got.coeffs[-1]
        # compare up to normalisation of the leading coefficient sign
        assert [int(c) * got_lead for c in want.all_coeffs()] == [
            int(c) * lead for c in reversed(got.coeffs)
        ]


def test_sylvester_resultant_matches_sympy():
    rng = random.Random(5)
    for _ in range(20):
        f = random_poly(rng, rng.randint(1, 4), 5, monic=False)
        g = random_poly(rng, rng.randint(1, 4), 5, monic=False)
        assert sylvester_resultant(f, g) == int(
            sympy.resultant(to_sympy(f).as_expr(), to_sympy(g).as_expr(), X)
        )


def test_discriminant_oracles():
    assert discriminant(P("x^3-x-1")) == -23
    assert discriminant(P("x^3-3x-1")) == 81
    assert discriminant(P("x^3-x^2-2x+1")) == 49
    rng = random.Random(3)
    for _ in range(15):
        f = random_poly(rng, rng.randint(2, 4), 5)
        assert discriminant(f) == int(sympy.discriminant(to_sympy(f).as_expr(), X))


def test_power_sums_newton_roundtrip():
    rng = random.Random(17)
    for _ in range(15):
        f = random_poly(rng, rng.randint(1, 5), 4)
        ps = power_sums(f, f.degree)
        assert from_power_sums(ps, f.degree) == f
    # hand value: for x^2-3x+1, p1 = 3, p2 = 9-2 = 7, p3 = 18
    assert power_sums(P("x^2-3x+1"), 3) == [2, 3, 7, 18]


# ---------------------------------------------------------------------------
# char_poly


def test_char_poly_companion():
    comp = [
        [Fraction(0), Fraction(0), Fraction(-1)],
        [Fraction(1), Fraction(0), Fraction(2)],
        [Fraction(0), Fraction(1), Fraction(1)],
    ]
    cp = char_poly(comp)
    assert cp.integral
    assert cp.integer_poly() == P("x^3-x^2-2x+1")


def test_char_poly_non_integral():
    cp = char_poly([[Fraction(1, 2)]])
    assert not cp.integral
    assert cp.fractions == (Fraction(1), Fraction(-1, 2))
    with pytest.raises(InputError):
        cp.integer_poly()


# ---------------------------------------------------------------------------
# root counting


def test_unit_circle_root_count_oracles():
    assert unit_circle_root_count(P("x^2-3x+1")) == 0
    assert unit_circle_root_count(P("x^4+x^3+x^2+x+1")) == 4
    assert unit_circle_root_count(P("x^2-1")) == 2
    assert unit_circle_root_count(P("x^4+1")) == 4
    assert unit_circle_root_count(_mul(P("x^2-1"), P("x^2-3x+1"))) == 2
    assert unit_circle_root_count(P("x^3-x-1")) == 0


def test_count_roots_by_modulus_oracles():
    assert count_roots_by_modulus(P("x^2-3x+1")) == (1, 0, 1)
    assert count_roots_by_modulus(P("x^4+x^3+x^2+x+1")) == (0, 4, 0)
    assert count_roots_by_modulus(P("x^3-x-1")) == (2, 0, 1)
    assert count_roots_by_modulus(P("x^4-10x^2+1")) == (2, 0, 2)
    assert count_roots_by_modulus(P("x^2-x-1")) == (1, 0, 1)


def test_count_roots_by_modulus_consistency():
    # dual route: the on-circle slot must agree with the exact Sturm count
    rng = random.Random(29)
    checked = 0
    while checked < 25:
        f = random_poly(rng, rng.randint(2, 5), 4)
        if factor_over_rationals(f).factors[0][0].degree == 0:
            continue
        inside, on, outside = count_roots_by_modulus(f)
        assert inside + on + outside == f.degree
        assert on == unit_circle_root_count(f)
        checked += 1


def test_count_real_roots_window():
    f = P("x^4-10x^2+1")  # real roots near -3.146, -0.318, 0.318, 3.146
    assert count_real_roots(f, Fraction(-4), Fraction(4)) == 4
    assert count_real_roots(f, Fraction(0), Fraction(4)) == 2
    assert count_real_roots(f, Fraction(1), Fraction(2)) == 0
    assert sturm_count_open(f, Fraction(-1), Fraction(1)) == 2


# ---------------------------------------------------------------------------
# hyperbolicity and the Anosov predicate


def test_is_hyperbolic_oracles():
    assert is_hyperbolic(P("x^2-3x+1"))
    assert is_hyperbolic(P("x^3-x-1"))
    assert not is_hyperbolic(P("x^2-1"))
    assert not is_hyperbolic(P("x^4+x^3+x^2+x+1"))
    assert not is_hyperbolic(_mul(P("x^2+1"), P("x^2-3x+1")))


def test_is_hyperbolic_matches_high_precision_numerics():
    import mpmath

    rng = random.Random(41)
    with mpmath.workprec(256):
        for _ in range(20):
            f = random_poly(rng, rng.randint(2, 4), 5)
            if f.constant_term == 0 or discriminant(f) == 0:
                continue
            roots = mpmath.polyroots(
                [int(c) for c in reversed(f.coeffs)], maxsteps=200, extraprec=128
            )
            margin = min(abs(abs(r) - 1) for r in roots)
            if margin > mpmath.mpf(2) ** -100:
                # numerics certify every root is off the unit circle
                assert is_hyperbolic(f)


def test_is_integer_like():
    assert is_integer_like(P("x^2-3x+1"))
    assert is_integer_like(P("x^2-x-1"))
    assert not is_integer_like(P("x^2-3x+2"))
    assert not is_integer_like(D(2, -3, 1))


def test_is_anosov_polynomial_cases():
    assert is_anosov_polynomial(P("x^2-3x+1"))
    assert is_anosov_polynomial(P("x^2-x-1"))
    assert is_anosov_polynomial(_mul(P("x^2-3x+1"), P("x^2-5x+1")))
    assert is_anosov_polynomial(P("x^4-6x^3-6x^2-6x-1"))
    assert not is_anosov_polynomial(P("x-1"))  # degree too small
    assert not is_anosov_polynomial(P("x^2-3x+2"))  # constant term not a unit
    assert not is_anosov_polynomial(P("x^2-x+1"))  # roots on the unit circle
    assert not is_anosov_polynomial(D(2, -3, 1))  # not monic
    assert not is_anosov_polynomial(_mul(P("x^2-1"), P("x^2-3x+1")))


def test_irreducible_factors_are_anosov():
    assert irreducible_factors_are_anosov(_mul(P("x^2-3x+1"), P("x^2-5x+1")))
    assert not irreducible_factors_are_anosov(_mul(P("x^2-1"), P("x^2-3x+1")))


# ---------------------------------------------------------------------------
# certified isolation


def test_isolate_roots_canonical_order():
    f = P("x^4-10x^2+1")
    roots = isolate_roots(f)
    assert len(roots) == 4
    assert all(r.is_real for r in roots)
    mids = [r.midpoint()[0] for r in roots]
    assert mids == sorted(mids)
    # hand signs of (+-sqrt(3)+-sqrt(2)): two negative, two positive roots
    assert mids[0] < mids[1] < 0 < mids[2] < mids[3]


def test_isolate_roots_real_then_complex():
    roots = isolate_roots(P("x^3-x-1"))
    assert [r.is_real for r in roots] == [True, False, False]
    re, im = roots[0].midpoint()
    assert im == 0 and Fraction(4, 3) > re > Fraction(5, 4)  # plastic ratio


def test_isolate_roots_multiplicity():
    f = _mul(P("x^2-3x+1"), P("x^2-3x+1"))
    roots = isolate_roots(f)
    assert [r.multiplicity for r in roots] == [2, 2]


def test_isolate_roots_exact_rational():
    f = _mul(P("x-2"), P("x^2-3x+1"))
    roots = isolate_roots(f)
    exact = [r for r in roots if r.width() == 0]
    assert len(exact) == 1
    assert exact[0].midpoint() == (Fraction(2), Fraction(0))


def test_refinement_keeps_root_and_shrinks():
    f = P("x^3-x-1")
    for r in isolate_roots(f):
        before = r.width()
        r.refine_to(128)
        assert r.width() <= Fraction(1, 1 << 128) < before
        assert eval_poly_box(f.coeffs, r.box).contains_zero()


def test_refinement_is_deterministic():
    a = [r.refine_to(96).box.to_json() for r in isolate_roots(P("x^4-x-1"))]
    b = [r.refine_to(96).box.to_json() for r in isolate_roots(P("x^4-x-1"))]
    assert a == b


def test_precision_cap():
    (r, *_) = isolate_roots(P("x^2-3x+1"))
    with pytest.raises(PrecisionCapError):
        r.refine_to(PRECISION_CAP_BITS + 1)


def test_real_root_count_agrees_with_sympy():
    rng = random.Random(37)
    for _ in range(20):
        f = random_poly(rng, rng.randint(2, 5), 5)
        got = sum(1 for r in isolate_roots(f) for _ in range(r.multiplicity) if r.is_real)
        assert got == len(sympy.Poly(to_sympy(f)).real_roots())


# ---------------------------------------------------------------------------
# interval arithmetic invariants


@given(
    st.lists(st.integers(-9, 9), min_size=1, max_size=6),
    st.fractions(min_value=-4, max_value=4),
    st.fractions(min_value=-4, max_value=4),
    st.fractions(min_value=0, max_value=1),
)
@settings(max_examples=60, deadline=None)
def test_eval_poly_box_contains_point_value(coeffs, re, im, pad):
    box = Box(
        Interval(re - pad, re + pad),
        Interval(im - pad, im + pad),
    )
    cs = [Fraction(c) for c in coeffs]
    vr, vi = Fraction(0), Fraction(0)
    for c in reversed(cs):
        vr, vi = vr * re - vi * im + c, vr * im + vi * re
    out = eval_poly_box(cs, box)
    assert out.contains_point(vr, vi)


@given(
    st.fractions(min_value=-8, max_value=8),
    st.fractions(min_value=-8, max_value=8),
    st.fractions(min_value=0, max_value=2),
    st.fractions(min_value=0, max_value=2),
)
@settings(max_examples=60, deadline=None)
def test_interval_square_contains(lo, w, x, frac):
    iv = Interval(lo, lo + w)
    point = lo + w * min(frac, Fraction(1))
    assert iv.contains(point)
    assert iv.square().contains(point * point)
    if not iv.contains_zero():
        assert iv.reciprocal().contains(1 / point) or point == 0
