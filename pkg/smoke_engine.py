import time
from fractions import Fraction

from anosov.engine import (
    DescentInput,
    QuadraticMatrix,
    build_base_algebra,
    build_family_member,
    extend_family,
    family_automorphism,
    family_descent_input,
    fundamental_unit,
    galois_descent_quadratic,
    grading_from_dA,
    invariant_refinement,
    same_family_field,
    type_feasibility_verdict,
    verify_family_member,
)
from anosov.errors import InputError
from anosov.liealg import (
    LieAlgebra,
    abelian_algebra,
    abelian_factor_dim,
    check_grading,
    combine_automorphisms,
    direct_sum,
    heisenberg,
    is_anosov,
    lower_central_series,
    validate,
)
from anosov.polycore import IntPolynomial, char_poly

# fundamental units
for k, a, b in [(2, 3, 2), (3, 2, 1), (5, 9, 4), (6, 5, 2), (7, 8, 3), (10, 19, 6)]:
    p = fundamental_unit(k)
    assert p.xi == (a, b), (k, p.xi)
for bad in (0, -1, 4, 9):
    try:
        fundamental_unit(bad)
        raise AssertionError(bad)
    except InputError:
        pass
print("fundamental units ok")

# base algebra
base = build_base_algebra()
assert validate(base)
assert lower_central_series(base).type == (4, 2, 2, 2, 2)
assert abelian_factor_dim(base) == 0

# family automorphism: k=2, B^3 has (p, q) = (99, 70)
A = family_automorphism(fundamental_unit(2))
assert A.p_part[0][0] == 99 and A.q_part[0][0] == 70, (A.p_part[0][0], A.q_part[0][0])
assert A.p_part[1][1] == 99 and A.q_part[1][1] == -70

# abelian descent oracle: Q^2, swap, diag(xi, xi^-1) -> [[a, kb], [b, a]]
q2 = abelian_algebra(2)
rho = [[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]]
am = QuadraticMatrix(
    2,
    [[Fraction(3), 0], [0, Fraction(3)]],
    [[Fraction(2), 0], [0, Fraction(-2)]],
)
alg, mat = galois_descent_quadratic(DescentInput(base=q2, k=2, rho_tau=rho, a_matrix=am))
assert alg.structure == {}, alg.structure
assert mat == [[Fraction(3), Fraction(4)], [Fraction(2), Fraction(3)]], mat

# rho = identity, A rational -> output = input
h3 = heisenberg()
ident = [[Fraction(1 if i == j else 0) for j in range(3)] for i in range(3)]
am2 = QuadraticMatrix(
    2,
    [[Fraction(2), 0, 0], [0, Fraction(3), 0], [0, 0, Fraction(6)]],
    [[Fraction(0)] * 3 for _ in range(3)],
)
alg2, mat2 = galois_descent_quadratic(
    DescentInput(base=h3, k=2, rho_tau=ident, a_matrix=am2)
)
assert alg2 == LieAlgebra(3, ["a", "b", "c"], dict(h3.structure))
assert mat2 == am2.p_part or mat2 == [list(r) for r in am2.p_part]
print("descent oracles ok")

# m_2 bar table
t0 = time.time()
m2, a2 = build_family_member(2)
print("build m_2: %.2fs" % (time.time() - t0))
assert validate(m2)
assert lower_central_series(m2).type == (4, 2, 2, 2, 2)

one = Fraction(1)
k = 2


def entries(i, j):
    return dict((m, c) for m, c in m2.structure.get((i, j), ()))


X1, X2, X3, X4, Y1, Y2, Z1, Z2, V1, V2, W1, W2 = range(12)
expected = {
    (X1, X3): {Y1: 1, W1: 1},
    (X2, X4): {Y1: k, W1: -k},
    (X1, X4): {Y2: 1, W2: -1},
    (X2, X3): {Y2: 1, W2: 1},
    (X1, Y1): {Z1: 1},
    (X2, Y2): {Z1: k},
    (X1, Y2): {Z2: 1},
    (X2, Y1): {Z2: 1},
    (X1, Z1): {V1: 1},
    (X2, Z2): {V1: k},
    (X1, Z2): {V2: 1},
    (X2, Z1): {V2: 1},
    (X3, V1): {W1: 1},
    (X4, V2): {W1: k},
    (X3, V2): {W2: 1},
    (X4, V1): {W2: 1},
    (Z1, Y1): {W1: 1},
    (Z2, Y2): {W1: k},
    (Z1, Y2): {W2: 1},
    (Z2, Y1): {W2: 1},
}
actual = {key: dict((m, c) for m, c in val) for key, val in m2.structure.items()}
norm_expected = {}
for (i, j), out in expected.items():
    if i > j:
        norm_expected[(j, i)] = {m: -c for m, c in out.items()}
    else:
        norm_expected[(i, j)] = {m: Fraction(c) for m, c in out.items()}
norm_expected = {
    key: {m: Fraction(c) for m, c in out.items()} for key, out in norm_expected.items()
}
assert actual == norm_expected, (
    sorted(set(actual) - set(norm_expected)),
    sorted(set(norm_expected) - set(actual)),
    {kk: (actual.get(kk), norm_expected.get(kk)) for kk in actual if actual.get(kk) != norm_expected.get(kk)},
)
print("m_2 bar table exact")

# m_3: [Xb2, Yb2] = 3 Zb1
m3, a3 = build_family_member(3)
e = dict((m, c) for m, c in m3.structure[(X2, Y2)])
assert e == {Z1: Fraction(3)}, e
print("m_3 coefficient ok")

# verify_family_member
t0 = time.time()
for kk in (2, 3, 5, 6, 7, 10):
    rep = verify_family_member(kk)
    assert rep.passed, (kk, rep.checks)
print("verify k in {2,3,5,6,7,10}: %.2fs total" % (time.time() - t0))
try:
    verify_family_member(4)
    raise AssertionError("square k accepted")
except InputError:
    pass

# same_family_field
assert same_family_field(2, 8)
assert not same_family_field(2, 3)
assert same_family_field(2, 2)
print("field criterion ok")

# invariant refinement: descend h3+h3 by the copy swap with the unit
# lam = (3+sqrt5)/2 (root of x^2-3x+1) acting as diag(l, l, l^2, 1/l, 1/l, 1/l^2)
from anosov.quadfield import QuadExt

hh = direct_sum([heisenberg(), heisenberg()])
swap6 = [[Fraction(0)] * 6 for _ in range(6)]
for i in range(3):
    swap6[i][i + 3] = Fraction(1)
    swap6[i + 3][i] = Fraction(1)
lam = QuadExt(5, Fraction(3, 2), Fraction(1, 2))
diag = [lam, lam, lam ** 2, lam ** -1, lam ** -1, lam ** -2]
p6 = [[Fraction(0)] * 6 for _ in range(6)]
q6 = [[Fraction(0)] * 6 for _ in range(6)]
for i, u in enumerate(diag):
    p6[i][i] = u.a
    q6[i][i] = u.b
hq, Mq = galois_descent_quadratic(
    DescentInput(base=hh, k=5, rho_tau=swap6, a_matrix=QuadraticMatrix(5, p6, q6))
)
assert validate(hq)
assert lower_central_series(hq).type == (4, 2)
assert is_anosov(hq, Mq)
layers = invariant_refinement(hq, Mq)
assert [l.dim for l in layers] == [4, 2], [l.dim for l in layers]
v = grading_from_dA(hq, Mq)
assert v.status == "GradedGuaranteed", v
assert check_grading(hq, v.witness)
print("h3+h3 descent refinement ok; d =", v.data["d"])

# free 2-step on 3 generators with the companion automorphism of x^3-x^2-2x+1
free32 = LieAlgebra.from_brackets(
    6,
    [
        (0, 1, [(Fraction(1), 3)]),
        (0, 2, [(Fraction(1), 4)]),
        (1, 2, [(Fraction(1), 5)]),
    ],
)
assert validate(free32)
M1 = [
    [Fraction(0), Fraction(0), Fraction(-1)],
    [Fraction(1), Fraction(0), Fraction(2)],
    [Fraction(0), Fraction(1), Fraction(1)],
]
M6 = [[Fraction(0)] * 6 for _ in range(6)]
for i in range(3):
    for j in range(3):
        M6[i][j] = M1[i][j]


def colv(mat, j, n=3):
    return [mat[i][j] for i in range(n)] + [Fraction(0)] * 3


pairs = [(0, 1), (0, 2), (1, 2)]
for t, (i, j) in enumerate(pairs):
    img = free32.bracket(colv(M6, i), colv(M6, j))
    for s in range(3):
        M6[3 + s][3 + t] = img[3 + s]
from anosov.liealg import is_automorphism

assert is_automorphism(free32, M6)
assert is_anosov(free32, M6)
v = grading_from_dA(free32, M6)
assert v.status == "GradedGuaranteed", v
assert check_grading(free32, v.witness)
layers = invariant_refinement(free32, M6)
assert [l.dim for l in layers] == [3, 3]
print("free 2-step refinement ok; d =", v.data["d"])

# m_2 verdict: OutsideGuarantee with d = 1
t0 = time.time()
v2 = grading_from_dA(m2, a2)
assert v2.status == "OutsideGuarantee", v2
assert v2.data["d"] == 1, v2.data
assert v2.data["rank"] == 1, v2.data
print("m_2 grading verdict ok (%.2fs); data:" % (time.time() - t0), v2.data["type"])

# extend family
for n in (14, 15, 16):
    big, comb, verdict = extend_family(2, n)
    assert validate(big)
    assert big.dim == n
    assert abelian_factor_dim(big) == n - 12
    assert is_anosov(big, comb)
    assert verdict.status == "OutsideGuarantee"
for n in (12, 13):
    try:
        extend_family(2, n)
        raise AssertionError(n)
    except InputError:
        pass
print("extension ok")

# char poly product check for (2,14)
big, comb, _ = extend_family(2, 14)
cp_big = char_poly(comb)
cp_a = char_poly(a2)
quad = IntPolynomial.from_descending([1, -3, 1])
prod = cp_a.integer_poly * quad
assert cp_big.integer_poly == prod
print("char poly product exact")

# type verdicts
vt = type_feasibility_verdict((6, 2, 3))
assert vt.status == "AnosovImpossible", vt
vt = type_feasibility_verdict((3, 3, 3))
assert vt.status == "GradedGuaranteed"
vt = type_feasibility_verdict((4, 2, 2, 2, 2))
assert vt.status == "OutsideGuarantee"
vt = type_feasibility_verdict((4, 2))
assert vt.status == "GradedGuaranteed"
vt = type_feasibility_verdict((2, 2, 2))
assert vt.status == "NotAnosovType"
vt = type_feasibility_verdict((4, 3, 2))
assert vt.status == "NotAnosovType"
# exhaustive dim < 12
import itertools

t0 = time.time()
count = 0
for c in range(3, 6):
    for tp in itertools.product(range(2, 12), repeat=c):
        if sum(tp) >= 12 or tp[0] < 3:
            continue
        count += 1
        v = type_feasibility_verdict(tp)
        assert v.status != "OutsideGuarantee", (tp, v)
        assert v.status in ("GradedGuaranteed", "NotAnosovType", "AnosovImpossible")
print("exhaustive verdicts: %d types in %.3fs" % (count, time.time() - t0))

# f1 refinement: full-rank quartic on (4,2,2,2,2) -> NotAnosovType
f_s4 = IntPolynomial.from_descending([1, -6, -6, -6, -1])
v = type_feasibility_verdict((4, 2, 2, 2, 2), f1=f_s4)
assert v.status == "NotAnosovType", v
# full-rank quartic on (4,4,4) dim 12 -> upgrade to GradedGuaranteed
v = type_feasibility_verdict((4, 4, 4), f1=f_s4)
assert v.status == "GradedGuaranteed", v
print("f1 refinements ok")
print("all engine smoke checks passed")
