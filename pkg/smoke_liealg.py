from fractions import Fraction

from anosov.liealg import (
    FeasibilityCertificate,
    GradingAssignment,
    LieAlgebra,
    abelian_algebra,
    abelian_factor_dim,
    center,
    check_grading,
    derived,
    diagonal_grading_feasible,
    direct_sum,
    gamma_adapted_basis,
    heisenberg,
    is_anosov,
    is_automorphism,
    is_expanding,
    lower_central_series,
    split_abelian_factor,
    validate,
    verify_farkas,
)
from anosov.linalg import identity_matrix

h3 = heisenberg()
assert validate(h3)
s = lower_central_series(h3)
assert s.type == (2, 1), s.type
assert s.nilpotency_class == 2
assert abelian_factor_dim(h3) == 0

q3 = abelian_algebra(3)
assert validate(q3)
assert lower_central_series(q3).type == (3,)
assert abelian_factor_dim(q3) == 3

g = direct_sum([h3, abelian_algebra(2)])
assert validate(g)
assert g.dim == 5
assert abelian_factor_dim(g) == 2
ab, comp = split_abelian_factor(g)
assert ab.dim == 2 and comp.dim == 3, (ab.dim, comp.dim)
print("structure basics ok")

# diag(2,3,6) on h3: automorphism, expanding, not Anosov (eigenvalues not units)
A = [[Fraction(2), 0, 0], [0, Fraction(3), 0], [0, 0, Fraction(6)]]
assert is_automorphism(h3, A)
assert is_expanding(h3, A)
assert not is_anosov(h3, A)
I3 = identity_matrix(3)
assert is_automorphism(h3, I3)
assert not is_anosov(h3, I3)
assert not is_expanding(h3, I3)

# [e1,e4]=e3 breaks Jacobi on (e1,e2,e3)
bad = LieAlgebra.from_brackets(
    4,
    [(0, 1, [(Fraction(1), 2)]), (0, 2, [(Fraction(1), 3)]), (1, 3, [(Fraction(1), 2)])],
)
rep = validate(bad)
assert not rep and rep.violations, rep
# [e1,e2]=e2: solvable, not nilpotent, series stalls
aff = LieAlgebra.from_brackets(2, [(0, 1, [(Fraction(1), 1)])])
rep = validate(aff)
assert not rep and any("series" in v for v in rep.violations), rep
print("automorphism predicates ok")

# gradings
w = GradingAssignment.from_weights([1, 1, 2])
assert check_grading(h3, w)
assert not check_grading(h3, GradingAssignment.from_weights([1, 1, 3]))

# filiform dim 4: [e1,e2]=e3, [e1,e3]=e4
fil = LieAlgebra.from_brackets(
    4, [(0, 1, [(Fraction(1), 2)]), (0, 2, [(Fraction(1), 3)])]
)
assert validate(fil)
assert check_grading(fil, GradingAssignment.from_weights([1, 2, 3, 4]))
assert check_grading(fil, GradingAssignment.from_weights([1, 1, 2, 3]))

cert = diagonal_grading_feasible(h3)
assert cert and cert.weights == (1, 1, 2), cert
assert check_grading(h3, GradingAssignment.from_weights(cert.weights))
cert = diagonal_grading_feasible(abelian_algebra(4))
assert cert and cert.weights == (1, 1, 1, 1), cert
cert = diagonal_grading_feasible(fil)
assert cert and check_grading(fil, GradingAssignment.from_weights(cert.weights))
print("feasible gradings ok:", cert.weights)

# pieces form on h3: span(e1,e2) weight 1, span(e3) weight 2
from anosov.linalg import Subspace

p1 = Subspace(3, [[1, 0, 0], [0, 1, 0]])
p2 = Subspace(3, [[0, 0, 1]])
assert check_grading(h3, GradingAssignment.from_pieces([(1, p1), (2, p2)]))
assert not check_grading(h3, GradingAssignment.from_pieces([(1, p1), (3, p2)]))

# the 12-dim 7-step algebra: no positive grading exists
one = Fraction(1)
X1, X2, X3, X4, Y1, Y2, Z1, Z2, V1, V2, W1, W2 = range(12)
brackets = [
    (X1, X3, [(one, Y1)]),
    (X2, X4, [(one, Y2)]),
    (X1, Y1, [(one, Z1)]),
    (X2, Y2, [(one, Z2)]),
    (X1, Z1, [(one, V1)]),
    (X2, Z2, [(one, V2)]),
    (X3, V1, [(one, W1)]),
    (X4, V2, [(one, W2)]),
    (Y1, Z1, [(-one, W1)]),
    (Y2, Z2, [(-one, W2)]),
    (X1, X4, [(one, W1)]),
    (X2, X3, [(one, W2)]),
]
labels = ["X1", "X2", "X3", "X4", "Y1", "Y2", "Z1", "Z2", "V1", "V2", "W1", "W2"]
nq = LieAlgebra.from_brackets(12, brackets, basis_labels=labels)
assert validate(nq), validate(nq).violations
assert lower_central_series(nq).type == (4, 2, 2, 2, 2), lower_central_series(nq).type
cert = diagonal_grading_feasible(nq)
assert cert.kind == "Infeasible", cert
assert verify_farkas(cert.farkas)
print("no-grading certificate functional:", [str(c) for c in cert.farkas.functional])

# dual route: the hand-derived functional 2 w_X1 + 4 w_X2 + 3 w_X4 must lie in
# the row space of the equality system
from anosov.liealg.grading import _equality_rows
from anosov.linalg import solve_right, transpose

rows = _equality_rows(nq)
target = [Fraction(0)] * 12
target[X1] = 2
target[X2] = 4
target[X4] = 3
ys = solve_right(transpose(rows), target)
assert ys is not None, "hand functional not in row space"
print("dual-route functional solvable with", len(rows), "rows")

gb = gamma_adapted_basis(nq)
assert len(gb) == 12
cert2 = diagonal_grading_feasible(nq, basis=gb)
assert cert2.kind == "Infeasible"
print("all liealg smoke checks passed")
