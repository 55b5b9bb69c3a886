"""Quadratic Galois descent for Lie algebra automorphisms.

Input: a rational Lie algebra g, an involution rho of g, and an automorphism
A of the scalar extension over Q(sqrt(k)) whose conjugate equals the
rho-twist of A.  The fixed set {v = u + w*sqrt(k) : rho(v) = conj(v)}, i.e.
rho(u) = u and rho(w) = -w, is a rational form of the same dimension, A
restricts to it, and the restriction matrix is rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import InputError
from ..liealg import LieAlgebra, is_automorphism
from ..linalg import (
    det_fraction,
    identity_matrix,
    mat_eq,
    mat_inverse,
    mat_mul,
    mat_scale,
    mat_sub,
    mat_vec,
    nullspace,
    rref,
)
from ..quadfield import QuadExt


@dataclass(frozen=True)
class QuadraticMatrix:
    """Matrix P + Q*sqrt(k) over the quadratic field, stored as two rational parts."""

    k: int
    p_part: tuple
    q_part: tuple

    def __post_init__(self):
        if self.k <= 0:
            raise InputError("radicand must be a positive integer")
        QuadExt.of(self.k, 0)  # rejects perfect squares
        p = tuple(tuple(Fraction(x) for x in row) for row in self.p_part)
        q = tuple(tuple(Fraction(x) for x in row) for row in self.q_part)
        n = len(p)
        if len(q) != n or any(len(r) != n for r in p) or any(len(r) != n for r in q):
            raise InputError("rational and radical parts must be square of equal size")
        object.__setattr__(self, "p_part", p)
        object.__setattr__(self, "q_part", q)

    @property
    def size(self):
        return len(self.p_part)

    def entry(self, i, j):
        return QuadExt(self.k, self.p_part[i][j], self.q_part[i][j])

    def conjugate(self):
        return QuadraticMatrix(self.k, self.p_part, mat_scale(self.q_part, -1))

    @property
    def is_rational(self):
        return all(x == 0 for row in self.q_part for x in row)

    def column(self, j):
        return [self.entry(i, j) for i in range(self.size)]

    def __matmul__(self, other):
        if not isinstance(other, QuadraticMatrix) or other.k != self.k:
            raise InputError("mixed radicands in matrix product")
        k = self.k
        p = [
            [
                sum(
                    self.p_part[i][t] * other.p_part[t][j]
                    + k * self.q_part[i][t] * other.q_part[t][j]
                    for t in range(self.size)
                )
                for j in range(self.size)
            ]
            for i in range(self.size)
        ]
        q = [
            [
                sum(
                    self.p_part[i][t] * other.q_part[t][j]
                    + self.q_part[i][t] * other.p_part[t][j]
                    for t in range(self.size)
                )
                for j in range(self.size)
            ]
            for i in range(self.size)
        ]
        return QuadraticMatrix(self.k, p, q)

    def rational_representation(self):
        """The 2n x 2n rational matrix of v = u + w*sqrt(k) -> Av on (u, w) stacks."""
        n = self.size
        top = [list(self.p_part[i]) + [self.k * x for x in self.q_part[i]] for i in range(n)]
        bot = [list(self.q_part[i]) + list(self.p_part[i]) for i in range(n)]
        return top + bot

    def to_json(self):
        from ..linalg import format_fraction

        return {
            "k": self.k,
            "p": [[format_fraction(x) for x in row] for row in self.p_part],
            "q": [[format_fraction(x) for x in row] for row in self.q_part],
        }


def _bracket_quadext(g, x, y):
    """Bilinear extension of the bracket to vectors with quadratic-field entries."""
    rad = next(v.rad for v in x if isinstance(v, QuadExt))
    out = [QuadExt.of(rad, 0) for _ in range(g.dim)]
    for (i, j), entries in g.structure.items():
        s = x[i] * y[j] - x[j] * y[i]
        if s.is_zero:
            continue
        for m, c in entries:
            out[m] = out[m] + s * c
    return out


@dataclass(frozen=True)
class DescentInput:
    base: LieAlgebra
    k: int
    rho_tau: tuple
    a_matrix: QuadraticMatrix

    def __post_init__(self):
        rho = tuple(tuple(Fraction(x) for x in row) for row in self.rho_tau)
        object.__setattr__(self, "rho_tau", rho)


def validate_descent_input(inp):
    """Raise InputError naming the first violated descent requirement."""
    g, rho, a = inp.base, inp.rho_tau, inp.a_matrix
    n = g.dim
    if a.k != inp.k:
        raise InputError("radicand of the matrix disagrees with the input field")
    if len(rho) != n or a.size != n:
        raise InputError("matrix sizes must equal the algebra dimension")
    if not is_automorphism(g, rho):
        raise InputError("the involution is not an automorphism of the base algebra")
    if not mat_eq(mat_mul(rho, rho), identity_matrix(n)):
        raise InputError("the involution must square to the identity")
    if det_fraction(a.rational_representation()) == 0:
        raise InputError("the quadratic matrix is singular")
    # automorphism over the extension field: bracket columns vs mapped targets
    cols = [a.column(j) for j in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            lhs = _bracket_quadext(g, cols[i], cols[j])
            target = g.bracket(g.basis_vector(i), g.basis_vector(j))
            rhs = [
                sum((cols[m][r] * target[m] for m in range(n)), QuadExt.of(a.k, 0))
                for r in range(n)
            ]
            if any(not (l - r).is_zero for l, r in zip(lhs, rhs)):
                raise InputError(
                    "the quadratic matrix is not an automorphism of the extended algebra"
                )
    # twisted conjugation: rho A rho^{-1} = conj(A), with rho^{-1} = rho
    if not mat_eq(mat_mul(rho, mat_mul(a.p_part, rho)), [list(r) for r in a.p_part]):
        raise InputError("conjugation by the involution must fix the rational part")
    if not mat_eq(mat_mul(rho, mat_mul(a.q_part, rho)), mat_scale(a.q_part, -1)):
        raise InputError("conjugation by the involution must negate the radical part")


def fixed_form_basis(rho_tau):
    """Basis of the fixed rational form as (tag, vector) pairs.

    tag 0: vector u with rho(u) = u, representing u itself; tag 1: vector w
    with rho(w) = -w, representing sqrt(k) * w.  Bases of the two eigenspaces
    are echelonized and merged by pivot column, fixed vectors first, which
    reproduces the natural interleaved ordering for pairwise swap involutions.
    """
    rho = [[Fraction(x) for x in row] for row in rho_tau]
    n = len(rho)
    ident = identity_matrix(n)
    plus = nullspace(mat_sub(rho, ident))
    minus = nullspace(_mat_add_identity(rho))
    plus_rows, plus_pivots = rref(plus) if plus else ([], [])
    minus_rows, minus_pivots = rref(minus) if minus else ([], [])
    tagged = [(p, 0, v) for p, v in zip(plus_pivots, plus_rows)]
    tagged += [(p, 1, v) for p, v in zip(minus_pivots, minus_rows)]
    tagged.sort(key=lambda t: (t[0], t[1]))
    if len(tagged) != n:
        raise InputError("the involution does not split the space into +1/-1 parts")
    return [(tag, vec) for _, tag, vec in tagged]


def _mat_add_identity(m):
    out = [list(row) for row in m]
    for i in range(len(out)):
        out[i][i] = out[i][i] + 1
    return out


def galois_descent_quadratic(inp):
    """(rational form, matrix of A on it); structure constants are exact.

    Bar-basis bracket rules: [u, u'] stays rational, [u, sqrt(k) w] =
    sqrt(k) [u, w], and [sqrt(k) w, sqrt(k) w'] = k [w, w'].
    """
    validate_descent_input(inp)
    g, k = inp.base, inp.k
    n = g.dim
    bar = fixed_form_basis(inp.rho_tau)
    cols = [[bar[j][1][i] for j in range(n)] for i in range(n)]
    inv = mat_inverse(cols)
    if inv is None:
        raise InputError("internal: fixed-form basis is not a basis")
    fix_idx = [t for t, (tag, _) in enumerate(bar) if tag == 0]
    minus_idx = [t for t, (tag, _) in enumerate(bar) if tag == 1]
    fix_set = set(fix_idx)

    def decompose(p_vec, q_vec):
        """Coordinates of p + sqrt(k) q over the bar basis; supports must split."""
        cp = mat_vec(inv, p_vec)
        cq = mat_vec(inv, q_vec)
        if any(cp[t] != 0 for t in minus_idx) or any(cq[t] != 0 for t in fix_idx):
            raise InputError("internal: vector leaves the rational form")
        return [cp[t] if t in fix_set else cq[t] for t in range(n)]

    brackets = []
    for i in range(n):
        tag_i, v_i = bar[i]
        for j in range(i + 1, n):
            tag_j, v_j = bar[j]
            raw = g.bracket(v_i, v_j)
            if tag_i == 0 and tag_j == 0:
                coords = decompose(raw, [Fraction(0)] * n)
            elif tag_i == 1 and tag_j == 1:
                coords = decompose([k * x for x in raw], [Fraction(0)] * n)
            else:
                coords = decompose([Fraction(0)] * n, raw)
            entries = [(c, m) for m, c in enumerate(coords) if c != 0]
            if entries:
                brackets.append((i, j, entries))
    out_alg = LieAlgebra.from_brackets(
        n, brackets, basis_labels=[f"m{t + 1}" for t in range(n)]
    )

    a = inp.a_matrix
    a_cols = []
    for j in range(n):
        tag, v = bar[j]
        if tag == 0:
            p_vec = mat_vec(a.p_part, v)
            q_vec = mat_vec(a.q_part, v)
        else:
            p_vec = [k * x for x in mat_vec(a.q_part, v)]
            q_vec = mat_vec(a.p_part, v)
        a_cols.append(decompose(p_vec, q_vec))
    a_bar = [[a_cols[j][i] for j in range(n)] for i in range(n)]

    if not is_automorphism(out_alg, a_bar):
        raise InputError("internal: descended matrix is not an automorphism")
    return out_alg, a_bar
