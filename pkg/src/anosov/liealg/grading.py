"""Positive gradings: exact checking and diagonal-grading feasibility.

A diagonal grading assigns one positive weight per basis vector; every
nonzero structure constant c_{ij}^k forces the equality w_i + w_j = w_k.
Feasibility of the resulting system {E w = 0, w > 0} is decided exactly by
Fourier-Motzkin elimination over the rational nullspace of E, with
multiplier tracking so an infeasible answer carries a machine-checkable
certificate: rational multipliers on the equality rows whose combination
is a functional sum(c_i w_i) with all c_i >= 0 and some c_i > 0.  Such a
functional vanishes on every solution of the equalities but is positive on
any positive weight vector, so no positive solution can exist.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from ..errors import InputError
from ..linalg import (
    Subspace,
    format_fraction,
    identity_matrix,
    nullspace,
    solve_right,
    transpose,
)
from .algebra import LieAlgebra, lower_central_series


@dataclass(frozen=True)
class GradingAssignment:
    """Either one weight per basis vector or explicit (weight, Subspace) pieces."""

    weights: tuple | None = None
    pieces: tuple | None = None

    def __post_init__(self):
        if (self.weights is None) == (self.pieces is None):
            raise InputError("grading needs exactly one of weights or pieces")
        if self.weights is not None:
            ws = tuple(Fraction(w) for w in self.weights)
            if any(w <= 0 for w in ws):
                raise InputError("grading weights must be positive")
            object.__setattr__(self, "weights", ws)
        else:
            ps = tuple((Fraction(w), sub) for w, sub in self.pieces)
            if any(w <= 0 for w, _ in ps):
                raise InputError("grading weights must be positive")
            if len({w for w, _ in ps}) != len(ps):
                raise InputError("duplicate weight among grading pieces")
            object.__setattr__(self, "pieces", ps)

    @staticmethod
    def from_weights(weights):
        return GradingAssignment(weights=tuple(weights))

    @staticmethod
    def from_pieces(pieces):
        return GradingAssignment(pieces=tuple(pieces))

    def to_json(self):
        if self.weights is not None:
            return {"weights": [format_fraction(w) for w in self.weights]}
        return {
            "pieces": [
                {"weight": format_fraction(w), "basis": sub.to_json()}
                for w, sub in self.pieces
            ]
        }


def check_grading(g, grading):
    """True iff the assignment is a grading: direct sum plus weight additivity."""
    if grading.weights is not None:
        ws = grading.weights
        if len(ws) != g.dim:
            raise InputError("one weight per basis vector required")
        for (i, j), entries in g.structure.items():
            for k, _ in entries:
                if ws[k] != ws[i] + ws[j]:
                    return False
        return True

    pieces = grading.pieces
    total = Subspace(g.dim, [v for _, sub in pieces for v in sub.basis])
    if total.dim != g.dim or sum(sub.dim for _, sub in pieces) != g.dim:
        raise InputError("grading pieces do not form a direct sum decomposition")
    by_weight = {w: sub for w, sub in pieces}
    for wa, pa in pieces:
        for wb, pb in pieces:
            if wb < wa:
                continue
            target = by_weight.get(wa + wb)
            for u in pa.basis:
                for v in pb.basis:
                    w = g.bracket(u, v)
                    if not any(w):
                        continue
                    if target is None or not target.contains(w):
                        return False
    return True


@dataclass(frozen=True)
class FarkasProof:
    """Multipliers over the equality rows and the nonnegative functional they sum to."""

    rows: tuple           # the deduplicated equality rows, each length dim
    multipliers: tuple    # one rational per row
    functional: tuple     # sum_m multipliers[m] * rows[m], entrywise >= 0, not all 0

    def to_json(self):
        return {
            "rows": [[format_fraction(x) for x in row] for row in self.rows],
            "multipliers": [format_fraction(x) for x in self.multipliers],
            "functional": [format_fraction(x) for x in self.functional],
        }


def verify_farkas(proof):
    """Recompute the combination and the sign conditions; no trust in the prover."""
    if not proof.rows or len(proof.multipliers) != len(proof.rows):
        return False
    dim = len(proof.rows[0])
    combo = [Fraction(0)] * dim
    for y, row in zip(proof.multipliers, proof.rows):
        if len(row) != dim:
            return False
        for t in range(dim):
            combo[t] += Fraction(y) * Fraction(row[t])
    if tuple(combo) != tuple(Fraction(x) for x in proof.functional):
        return False
    return all(x >= 0 for x in combo) and any(x > 0 for x in combo)


@dataclass(frozen=True)
class FeasibilityCertificate:
    kind: str                      # "Feasible" | "Infeasible"
    weights: tuple | None = None   # positive integers, Feasible only
    farkas: FarkasProof | None = None

    def __bool__(self):
        return self.kind == "Feasible"

    def to_json(self):
        if self.kind == "Feasible":
            return {"kind": "Feasible", "weights": list(self.weights)}
        return {"kind": "Infeasible", "farkas": self.farkas.to_json()}


def _transformed_structure(g, basis):
    """Structure constants of g rewritten in the supplied basis."""
    vecs = [[Fraction(x) for x in v] for v in basis]
    if len(vecs) != g.dim or any(len(v) != g.dim for v in vecs):
        raise InputError("change of basis needs dim independent vectors")
    cols = transpose(vecs)
    structure = {}
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            b = g.bracket(vecs[i], vecs[j])
            coords = solve_right(cols, b)
            if coords is None:
                raise InputError("change of basis is singular")
            entries = tuple((k, c) for k, c in enumerate(coords) if c != 0)
            if entries:
                structure[(i, j)] = entries
    return LieAlgebra(g.dim, [f"b{t + 1}" for t in range(g.dim)], structure)


def _equality_rows(g):
    """One row w_i + w_j - w_k = 0 per bracket target, deduplicated."""
    rows = []
    seen = set()
    for (i, j), entries in sorted(g.structure.items()):
        for k, _ in entries:
            row = [Fraction(0)] * g.dim
            row[i] += 1
            row[j] += 1
            row[k] -= 1
            key = tuple(row)
            if key not in seen:
                seen.add(key)
                rows.append(row)
    return rows


def _normalize_fm_row(coeffs, rhs, mult):
    scale = None
    for x in coeffs:
        if x != 0:
            scale = abs(x)
            break
    if scale is None:
        return tuple(coeffs), rhs, tuple(mult)
    return (
        tuple(x / scale for x in coeffs),
        rhs / scale,
        tuple(x / scale for x in mult),
    )


def diagonal_grading_feasible(g, basis=None):
    """Decide positive diagonal weights exactly; certificate either way.

    With a basis argument the question is posed for gradings diagonal over
    that basis, and returned weights refer to it positionally.
    """
    work = g if basis is None else _transformed_structure(g, basis)
    eq_rows = _equality_rows(work)
    n = work.dim
    if eq_rows:
        null = nullspace(eq_rows)
    else:
        null = [[Fraction(x) for x in row] for row in identity_matrix(n)]

    # inequality system over nullspace coordinates t: sum_j N_j[i] t_j >= 1
    rows = []
    for i in range(n):
        coeffs = [null[j][i] for j in range(len(null))] if null else []
        mult = [Fraction(0)] * n
        mult[i] = Fraction(1)
        rows.append((tuple(coeffs), Fraction(1), tuple(mult)))

    stages = []
    nvars = len(null)
    for var in range(nvars):
        stages.append(rows)
        zero, pos, neg = [], [], []
        for row in rows:
            a = row[0][var]
            if a == 0:
                zero.append(row)
            elif a > 0:
                pos.append(row)
            else:
                neg.append(row)
        new_rows = {}
        for row in zero:
            key = _normalize_fm_row(*row)
            new_rows.setdefault(key[:2], key)
        for cp, rp, mp in pos:
            for cn, rn, mn in neg:
                fp = 1 / cp[var]
                fn = 1 / -cn[var]
                coeffs = [fp * a + fn * b for a, b in zip(cp, cn)]
                rhs = fp * rp + fn * rn
                mult = [fp * a + fn * b for a, b in zip(mp, mn)]
                key = _normalize_fm_row(coeffs, rhs, mult)
                new_rows.setdefault(key[:2], key)
        rows = list(new_rows.values())

    bad = next((row for row in rows if row[1] > 0), None)
    if bad is not None:
        functional = [Fraction(x) for x in bad[2]]
        ys = solve_right(transpose(eq_rows), functional) if eq_rows else None
        if eq_rows and ys is None:
            raise InputError("internal: infeasibility functional outside the row space")
        proof = FarkasProof(
            rows=tuple(tuple(r) for r in eq_rows),
            multipliers=tuple(ys or ()),
            functional=tuple(functional),
        )
        if eq_rows and not verify_farkas(proof):
            raise InputError("internal: produced Farkas certificate fails verification")
        return FeasibilityCertificate(kind="Infeasible", farkas=proof)

    # feasible: back-substitute through the recorded stages
    t = [Fraction(0)] * nvars
    for var in range(nvars - 1, -1, -1):
        lowers, uppers = [], []
        for coeffs, rhs, _ in stages[var]:
            a = coeffs[var]
            if a == 0:
                continue
            rest = rhs - sum(
                coeffs[m] * t[m] for m in range(var + 1, nvars) if coeffs[m]
            )
            if a > 0:
                lowers.append(rest / a)
            else:
                uppers.append(rest / a)
        if lowers:
            t[var] = max(lowers)
        elif uppers:
            t[var] = min(uppers)
    weights = [sum(null[j][i] * t[j] for j in range(nvars)) for i in range(n)]
    den = 1
    for w in weights:
        den = den * w.denominator // gcd(den, w.denominator)
    ints = [int(w * den) for w in weights]
    g_all = 0
    for w in ints:
        g_all = gcd(g_all, w)
    ints = [w // g_all for w in ints]
    if any(w < 1 for w in ints):
        raise InputError("internal: feasible weights failed positivity")
    for row in eq_rows:
        if sum(a * w for a, w in zip(row, ints)) != 0:
            raise InputError("internal: feasible weights violate an equality")
    return FeasibilityCertificate(kind="Feasible", weights=tuple(ints))


def gamma_adapted_basis(g):
    """Basis listing a complement of gamma_{i+1} in gamma_i, layer by layer."""
    chain = lower_central_series(g).chain
    vectors = []
    for i in range(len(chain) - 1):
        vectors.extend(chain[i + 1].complement_in(chain[i]))
    return vectors
