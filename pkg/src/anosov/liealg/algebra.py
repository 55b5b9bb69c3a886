"""Exact rational nilpotent Lie algebras given by sparse structure constants.

Brackets are stored for i < j only; [b_j, b_i] is the negation and [b_i, b_i]
is zero by convention, so antisymmetry is built into the representation and
only the Jacobi identity and nilpotency need checking.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from ..errors import InputError
from ..linalg import (
    Subspace,
    block_diag,
    det_fraction,
    format_fraction,
    identity_matrix,
    mat_vec,
    nullspace,
    parse_fraction,
)
from ..polycore import (
    IntPolynomial,
    char_poly,
    count_roots_by_modulus,
    is_hyperbolic,
    is_integer_like,
)


class LieAlgebra:
    """Immutable algebra over Q: dimension, basis labels, sparse brackets."""

    __slots__ = ("dim", "basis_labels", "structure")

    def __init__(self, dim, basis_labels, structure):
        if dim <= 0:
            raise InputError("dimension must be positive")
        labels = tuple(str(s) for s in basis_labels)
        if len(labels) != dim:
            raise InputError("need one label per basis vector")
        if len(set(labels)) != dim:
            raise InputError("basis labels must be distinct")
        canon = {}
        for (i, j), entries in structure.items():
            if not (0 <= i < j < dim):
                raise InputError(f"bracket key ({i}, {j}) out of range or not i < j")
            cleaned = tuple(
                (k, Fraction(c))
                for k, c in sorted(entries)
                if Fraction(c) != 0
            )
            for k, _ in cleaned:
                if not 0 <= k < dim:
                    raise InputError(f"bracket target {k} out of range")
            if len({k for k, _ in cleaned}) != len(cleaned):
                raise InputError(f"duplicate bracket target in [{i}, {j}]")
            if cleaned:
                canon[(i, j)] = cleaned
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "basis_labels", labels)
        object.__setattr__(self, "structure", canon)

    def __setattr__(self, name, value):
        raise AttributeError("LieAlgebra is immutable")

    @staticmethod
    def from_brackets(dim, brackets, basis_labels=None):
        """Build from (i, j, [(coeff, target), ...]) triples, any index order."""
        labels = basis_labels or [f"e{t + 1}" for t in range(dim)]
        structure = {}
        for i, j, entries in brackets:
            if i == j:
                raise InputError("[b_i, b_i] entries are zero by convention")
            sign = 1
            if i > j:
                i, j, sign = j, i, -1
            acc = dict(structure.get((i, j), ()))
            for coeff, k in entries:
                acc[k] = acc.get(k, Fraction(0)) + sign * Fraction(coeff)
            structure[(i, j)] = tuple(sorted(acc.items()))
        return LieAlgebra(dim, labels, structure)

    def bracket(self, u, v):
        """Bilinear extension of the structure constants to vectors."""
        u = [Fraction(x) for x in u]
        v = [Fraction(x) for x in v]
        if len(u) != self.dim or len(v) != self.dim:
            raise InputError("vector length does not match the algebra dimension")
        out = [Fraction(0)] * self.dim
        for (i, j), entries in self.structure.items():
            s = u[i] * v[j] - u[j] * v[i]
            if s:
                for k, c in entries:
                    out[k] += s * c
        return out

    def basis_vector(self, i):
        v = [Fraction(0)] * self.dim
        v[i] = Fraction(1)
        return v

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.dim == other.dim and self.structure == other.structure

    def __hash__(self):
        return hash((self.dim, tuple(sorted(self.structure.items()))))

    def __repr__(self):
        return f"LieAlgebra(dim={self.dim}, brackets={len(self.structure)})"

    def to_json(self):
        brackets = []
        for (i, j), entries in sorted(self.structure.items()):
            out = [[format_fraction(c), k] for k, c in entries]
            brackets.append({"i": i, "j": j, "out": out})
        return {"dim": self.dim, "basis": list(self.basis_labels), "brackets": brackets}

    @staticmethod
    def from_json(data):
        dim = data["dim"]
        structure = {}
        for item in data["brackets"]:
            entries = tuple((k, parse_fraction(c)) for c, k in item["out"])
            structure[(item["i"], item["j"])] = entries
        return LieAlgebra(dim, data.get("basis") or [f"e{t + 1}" for t in range(dim)], structure)


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class SeriesChain:
    chain: tuple          # gamma_1 down to gamma_{c+1} = 0
    type: tuple

    @property
    def nilpotency_class(self):
        return len(self.type)


def validate(g):
    """Jacobi identity on all basis triples plus nilpotency, exactly."""
    violations = []
    n = g.dim
    basis = [g.basis_vector(i) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                t1 = g.bracket(g.bracket(basis[i], basis[j]), basis[k])
                t2 = g.bracket(g.bracket(basis[j], basis[k]), basis[i])
                t3 = g.bracket(g.bracket(basis[k], basis[i]), basis[j])
                if any(a + b + c for a, b, c in zip(t1, t2, t3)):
                    violations.append(
                        f"Jacobi fails on ({g.basis_labels[i]}, {g.basis_labels[j]}, "
                        f"{g.basis_labels[k]})"
                    )
    if _series_subspaces(g) is None:
        violations.append("lower central series does not reach zero")
    return ValidationReport(ok=not violations, violations=tuple(violations))


def _series_subspaces(g):
    """Subspace chain of the lower central series, or None if it stalls."""
    full = Subspace(g.dim, identity_matrix(g.dim))
    chain = [full]
    basis = [g.basis_vector(i) for i in range(g.dim)]
    while chain[-1].dim > 0:
        prev = chain[-1]
        vectors = []
        for b in basis:
            for v in prev.basis:
                w = g.bracket(b, v)
                if any(w):
                    vectors.append(w)
        nxt = Subspace(g.dim, vectors)
        if nxt.dim >= prev.dim:
            return None
        chain.append(nxt)
    return chain


def lower_central_series(g):
    """gamma_1 = g, gamma_{i+1} = [g, gamma_i], with the type tuple."""
    chain = _series_subspaces(g)
    if chain is None:
        raise InputError("algebra is not nilpotent")
    dims = [s.dim for s in chain]
    typ = tuple(dims[i] - dims[i + 1] for i in range(len(dims) - 1))
    return SeriesChain(chain=tuple(chain), type=typ)


def derived(g):
    """[g, g]: the span of all basis brackets."""
    vectors = []
    for entries in g.structure.values():
        v = [Fraction(0)] * g.dim
        for k, c in entries:
            v[k] = c
        vectors.append(v)
    return Subspace(g.dim, vectors)


def center(g):
    """{v : [v, b_j] = 0 for all j} via one exact nullspace computation."""
    rows = []
    basis = [g.basis_vector(i) for i in range(g.dim)]
    for j in range(g.dim):
        cols = [g.bracket(basis[i], basis[j]) for i in range(g.dim)]
        for k in range(g.dim):
            row = [cols[i][k] for i in range(g.dim)]
            if any(row):
                rows.append(row)
    if not rows:
        return Subspace(g.dim, identity_matrix(g.dim))
    return Subspace(g.dim, nullspace(rows))


def abelian_factor_dim(g):
    """m(g) = dim Z(g) - dim(Z(g) meet [g, g])."""
    z = center(g)
    return z.dim - z.intersection(derived(g)).dim


def split_abelian_factor(g):
    """(abelian, complement) with g = abelian + complement, abelian central.

    The abelian piece extends a basis of Z meet [g,g] to one of Z; the
    complement contains [g,g], hence is an ideal, and has codimension m(g).
    """
    z = center(g)
    d = derived(g)
    inner = z.intersection(d)
    abelian = Subspace(g.dim, inner.complement_in(z))
    taken = Subspace(g.dim, abelian.basis + d.basis)
    extras = []
    for i in range(g.dim):
        if taken.dim == g.dim:
            break
        e = g.basis_vector(i)
        if not taken.contains(e):
            extras.append(e)
            taken = Subspace(g.dim, taken.basis + [e])
    complement = Subspace(g.dim, d.basis + extras)
    if abelian.dim + complement.dim != g.dim or abelian.intersection(complement).dim:
        raise InputError("internal: abelian splitting is not a direct sum")
    return abelian, complement


def is_automorphism(g, m):
    """m invertible and [m b_i, m b_j] = m [b_i, b_j] exactly, for all i < j."""
    if len(m) != g.dim or any(len(row) != g.dim for row in m):
        raise InputError("matrix size does not match the algebra")
    m = [[Fraction(x) for x in row] for row in m]
    if det_fraction(m) == 0:
        return False
    cols = [[m[r][c] for r in range(g.dim)] for c in range(g.dim)]
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            lhs = g.bracket(cols[i], cols[j])
            rhs = mat_vec(m, g.bracket(g.basis_vector(i), g.basis_vector(j)))
            if lhs != rhs:
                return False
    return True


def _integer_char_poly(m):
    """Char poly cleared to an integer polynomial with the same roots."""
    cp = char_poly(m)
    den = 1
    for c in cp.fractions:
        den = den * c.denominator // gcd(den, c.denominator)
    return IntPolynomial([int(c * den) for c in cp.fractions])


def is_anosov(g, m):
    """Automorphism with integer-like and hyperbolic characteristic polynomial."""
    if not is_automorphism(g, m):
        return False
    cp = char_poly(m)
    if not cp.integral:
        return False
    f = cp.integer_poly
    return is_integer_like(f) and is_hyperbolic(f)


def is_expanding(g, m):
    """Automorphism with every eigenvalue of modulus strictly above 1."""
    if not is_automorphism(g, m):
        return False
    inside, on, _ = count_roots_by_modulus(_integer_char_poly(m))
    return inside == 0 and on == 0


def direct_sum(algebras):
    """Block direct sum; labels are suffixed when components collide."""
    algebras = list(algebras)
    if not algebras:
        raise InputError("direct sum of no algebras")
    total = sum(a.dim for a in algebras)
    flat = [lbl for a in algebras for lbl in a.basis_labels]
    if len(set(flat)) != total:
        flat = [
            f"{lbl}_{ci + 1}"
            for ci, a in enumerate(algebras)
            for lbl in a.basis_labels
        ]
    structure = {}
    offset = 0
    for a in algebras:
        for (i, j), entries in a.structure.items():
            structure[(i + offset, j + offset)] = tuple(
                (k + offset, c) for k, c in entries
            )
        offset += a.dim
    return LieAlgebra(total, flat, structure)


def combine_automorphisms(matrices):
    """Block-diagonal combination; char poly is the product of the blocks'."""
    blocks = [[[Fraction(x) for x in row] for row in m] for m in matrices]
    return block_diag(blocks)


def abelian_algebra(dim, labels=None):
    return LieAlgebra(dim, labels or [f"a{t + 1}" for t in range(dim)], {})


def heisenberg():
    """h3: [x1, x2] = z."""
    return LieAlgebra.from_brackets(
        3, [(0, 1, [(1, 2)])], basis_labels=["x1", "x2", "z"]
    )
