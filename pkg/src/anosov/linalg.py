"""Exact linear algebra over the rationals and the integers.

Matrices are plain lists of lists (row major).  Rational matrices hold
``fractions.Fraction`` entries, integer lattices hold Python ints.  All
routines are exact; nothing here ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import InputError

Vec = "list[Fraction]"
Mat = "list[list[Fraction]]"


# ---------------------------------------------------------------------------
# construction helpers


def frac_rows(rows):
    """Copy ``rows`` into a list-of-lists of Fractions."""
    return [[Fraction(x) for x in row] for row in rows]


def identity_matrix(n, one=Fraction(1)):
    zero = one - one
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def zero_matrix(rows, cols):
    return [[Fraction(0)] * cols for _ in range(rows)]


def transpose(m):
    return [list(col) for col in zip(*m)] if m else []


def mat_mul(a, b):
    if not a or not b:
        return []
    n, k, m = len(a), len(b), len(b[0])
    if len(a[0]) != k:
        raise InputError("matrix dimensions do not match for multiplication")
    bt = transpose(b)
    return [[sum(ra[t] * cb[t] for t in range(k)) for cb in bt] for ra in a]


def mat_vec(a, v):
    if a and len(a[0]) != len(v):
        raise InputError("matrix/vector dimensions do not match")
    return [sum(row[i] * v[i] for i in range(len(v))) for row in a]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, c):
    return [[c * x for x in row] for row in a]


def mat_eq(a, b):
    return len(a) == len(b) and all(ra == rb for ra, rb in zip(a, b))


def mat_pow(a, e):
    n = len(a)
    result = identity_matrix(n)
    base = [row[:] for row in a]
    while e:
        if e & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        e >>= 1
    return result


def block_diag(blocks):
    n = sum(len(b) for b in blocks)
    out = zero_matrix(n, n)
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[off + i][off + j] = Fraction(x)
        off += len(b)
    return out


# ---------------------------------------------------------------------------
# Gaussian elimination over Q


def rref(rows):
    """Reduced row echelon form.  Returns (new_rows, pivot_columns)."""
    m = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    r = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def row_space_basis(rows):
    basis, _ = rref(rows)
    return basis


def matrix_rank(rows):
    return len(rref(rows)[0])


def nullspace(rows):
    """Basis of the right kernel {v : M v = 0} over Q."""
    if not rows:
        return []
    cols = len(rows[0])
    red, pivots = rref(rows)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def solve_right(a, b):
    """One solution of A x = b, or None when inconsistent."""
    if not a:
        return None
    cols = len(a[0])
    aug = [row[:] + [bv] for row, bv in zip(a, b)]
    red, pivots = rref(aug)
    for row in red:
        if all(x == 0 for x in row[:cols]) and row[cols] != 0:
            return None
    x = [Fraction(0)] * cols
    for r, pc in enumerate(pivots):
        if pc == cols:
            return None
        x[pc] = red[r][cols]
    return x


def mat_inverse(a):
    n = len(a)
    aug = [row[:] + irow for row, irow in zip(frac_rows(a), identity_matrix(n))]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise InputError("matrix is singular")
    return [row[n:] for row in red[:n]]


def det_fraction(a):
    """Determinant over Q by fraction-free style elimination on Fractions."""
    n = len(a)
    m = frac_rows(a)
    det = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return det


def char_poly_fractions(a):
    """Monic characteristic polynomial det(xI - A), ascending Fraction coeffs.

    Faddeev-LeVerrier: exact, division only by integers.
    """
    n = len(a)
    if any(len(row) != n for row in a):
        raise InputError("characteristic polynomial requires a square matrix")
    m = frac_rows(a)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    mk = identity_matrix(n)
    for k in range(1, n + 1):
        mk = mat_mul(m, mk)
        trace = sum(mk[i][i] for i in range(n))
        c = -trace / k
        coeffs[n - k] = c
        for i in range(n):
            mk[i][i] += c
    return coeffs


def exterior_square(a):
    """Matrix induced on the second exterior power, basis e_i ^ e_j with i < j."""
    n = len(a)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    out = zero_matrix(len(pairs), len(pairs))
    for col, (k, l) in enumerate(pairs):
        for row, (i, j) in enumerate(pairs):
            out[row][col] = a[i][k] * a[j][l] - a[i][l] * a[j][k]
    return out


# ---------------------------------------------------------------------------
# subspaces (echelonized rational row spaces)


class Subspace:
    """A subspace of Q^n stored as a canonical reduced row echelon basis."""

    __slots__ = ("ambient_dim", "basis", "_pivots")

    def __init__(self, ambient_dim, vectors=()):
        self.ambient_dim = ambient_dim
        rows = [list(v) for v in vectors]
        for row in rows:
            if len(row) != ambient_dim:
                raise InputError("subspace vector has wrong length")
        self.basis, self._pivots = rref(rows) if rows else ([], [])

    @property
    def dim(self):
        return len(self.basis)

    def contains(self, v):
        w = [Fraction(x) for x in v]
        for row, p in zip(self.basis, self._pivots):
            if w[p] != 0:
                f = w[p]
                w = [x - f * y for x, y in zip(w, row)]
        return all(x == 0 for x in w)

    def contains_subspace(self, other):
        return all(self.contains(v) for v in other.basis)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient_dim, tuple(tuple(r) for r in self.basis)))

    def sum(self, other):
        return Subspace(self.ambient_dim, self.basis + other.basis)

    def intersection(self, other):
        """Zassenhaus: row reduce [U U; W 0], read the right half of zero-left rows."""
        n = self.ambient_dim
        block = [row + row for row in self.basis]
        block += [row + [Fraction(0)] * n for row in other.basis]
        red, _ = rref(block)
        out = []
        for row in red:
            if all(x == 0 for x in row[:n]):
                out.append(row[n:])
        return Subspace(n, out)

    def coordinates(self, v):
        """Coordinates of v in this basis, or None if v is outside."""
        if not self.basis:
            return [] if all(Fraction(x) == 0 for x in v) else None
        cols = transpose(self.basis)
        return solve_right(cols, [Fraction(x) for x in v])

    def complement_in(self, larger):
        """Vectors extending this basis to a basis of ``larger`` (greedy)."""
        current = list(self.basis)
        extension = []
        span = Subspace(self.ambient_dim, current)
        for v in larger.basis:
            if not span.contains(v):
                extension.append(v)
                current.append(v)
                span = Subspace(self.ambient_dim, current)
        return extension

    def to_json(self):
        return [[format_fraction(x) for x in row] for row in self.basis]


def format_fraction(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_fraction(s):
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad rational literal {s!r}") from exc


# ---------------------------------------------------------------------------
# integer lattices


def det_bareiss(rows):
    """Exact determinant of an integer matrix (Bareiss, fraction free)."""
    n = len(rows)
    if n == 0:
        return 1
    m = [[int(x) for x in row] for row in rows]
    sign = 1
    prev = 1
    for c in range(n - 1):
        pivot = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pivot is None:
            return 0
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            sign = -sign
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                m[i][j] = (m[i][j] * m[c][c] - m[i][c] * m[c][j]) // prev
            m[i][c] = 0
        prev = m[c][c]
    return sign * m[n - 1][n - 1]


def hnf_rows(rows):
    """Row-style Hermite normal form basis of the lattice spanned by ``rows``.

    Returns a list of nonzero integer vectors with positive pivots and the
    entries above each pivot reduced into [0, pivot).  Canonical: two inputs
    spanning the same lattice give identical output.
    """
    m = [[int(x) for x in row] for row in rows if any(row)]
    if not m:
        return []
    cols = len(m[0])
    r = 0
    for c in range(cols):
        # gcd-reduce column c below row r
        while True:
            nz = [i for i in range(r, len(m)) if m[i][c] != 0]
            if not nz:
                break
            pivot = min(nz, key=lambda i: abs(m[i][c]))
            m[r], m[pivot] = m[pivot], m[r]
            done = True
            for i in range(r + 1, len(m)):
                if m[i][c] != 0:
                    q = m[i][c] // m[r][c]
                    m[i] = [x - q * y for x, y in zip(m[i], m[r])]
                    if m[i][c] != 0:
                        done = False
            if done:
                break
        if r < len(m) and m[r][c] != 0:
            if m[r][c] < 0:
                m[r] = [-x for x in m[r]]
            for i in range(r):
                q = m[i][c] // m[r][c]
                if q:
                    m[i] = [x - q * y for x, y in zip(m[i], m[r])]
            r += 1
            if r == len(m):
                break
    return [row for row in m[:r] if any(row)]


def in_lattice(v, hnf_basis):
    """Membership of an integer vector in the lattice given by an HNF basis."""
    w = [int(x) for x in v]
    for row in hnf_basis:
        p = next(i for i, x in enumerate(row) if x != 0)
        if w[p] % row[p] != 0:
            return False
        q = w[p] // row[p]
        if q:
            w = [x - q * y for x, y in zip(w, row)]
    return all(x == 0 for x in w)


def column_hnf_transform(rows):
    """Unimodular U with M U in column echelon form.  Returns (H, U).

    Zero columns of H mark kernel columns of U: column j of H equals
    M times column j of U throughout.
    """
    m = [[int(x) for x in row] for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    u = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]

    def col_op(j1, j2, a, b, c, d):
        # (col j1, col j2) <- (a*col j1 + b*col j2, c*col j1 + d*col j2)
        for row in m:
            x, y = row[j1], row[j2]
            row[j1], row[j2] = a * x + b * y, c * x + d * y
        for row in u:
            x, y = row[j1], row[j2]
            row[j1], row[j2] = a * x + b * y, c * x + d * y

    rank = 0
    for r in range(nrows):
        piv = next((j for j in range(rank, ncols) if m[r][j] != 0), None)
        if piv is None:
            continue
        if piv != rank:
            col_op(rank, piv, 0, 1, 1, 0)
        for j in range(rank + 1, ncols):
            if m[r][j] != 0:
                g, s, t = _bezout(m[r][rank], m[r][j])
                # det [[s, t], [-y/g, x/g]] = (s*x + t*y)/g = 1
                col_op(rank, j, s, t, -(m[r][j] // g), m[r][rank] // g)
        rank += 1
        if rank == ncols:
            break
    return m, u


def _bezout(a, b):
    """(g, s, t) with s*a + t*b = g = gcd(a, b) > 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        return -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def integer_kernel(rows):
    """Basis of {z in Z^n : M z = 0}; saturated (primitive) automatically.

    Computed from the rational nullspace: clear denominators, then saturate
    via HNF of the generated lattice intersected with the kernel.  Because
    the rational kernel is a subSPACE, the integer points in it form the
    saturation of any full-rank sublattice; HNF of the cleared basis followed
    by primitive rescaling of the HNF rows would not be enough in general, so
    we use the unimodular column reduction route instead.
    """
    if not rows:
        return []
    ncols = len(rows[0])
    m = [[int(x) for x in row] for row in rows]
    h, u = column_hnf_transform(m)
    ut = transpose(u)
    kernel = []
    for j in range(ncols):
        if all(h[i][j] == 0 for i in range(len(h))):
            kernel.append([row[j] for row in u])
    return hnf_rows(kernel)


def preimage_lattice(m_rows, lattice_basis, n_unknowns=None):
    """Basis of {z in Z^n : M z lies in the lattice spanned by lattice_basis}.

    Solved as the projection to the z block of the integer kernel of
    [M | -B^T] acting on (z, w).
    """
    if not m_rows:
        return []
    n = n_unknowns if n_unknowns is not None else len(m_rows[0])
    rows = []
    k = len(lattice_basis)
    for i, row in enumerate(m_rows):
        ext = [int(x) for x in row] + [-int(lattice_basis[t][i]) for t in range(k)]
        rows.append(ext)
    ker = integer_kernel(rows)
    return hnf_rows([v[:n] for v in ker])


def lattice_rank(basis):
    if not basis:
        return 0
    return matrix_rank([[Fraction(x) for x in row] for row in basis])


# ---------------------------------------------------------------------------
# LLL reduction (exact, delta = 3/4)


def lll_reduce(rows, delta=Fraction(3, 4)):
    """LLL reduction of linearly independent integer basis rows.

    All-integer variant: the state is the integer Gram subdeterminants d_i and
    the scaled Gram-Schmidt coefficients lam[i][j] = d_{j+1} * mu_{i,j}, so
    every division below is exact and no rationals appear.  Raises InputError
    when the rows are dependent (a zero subdeterminant).
    """
    b = [[int(x) for x in row] for row in rows if any(row)]
    if not b:
        return []
    n = len(b)
    if isinstance(delta, Fraction):
        dp, dq = delta.numerator, delta.denominator
    else:
        frac = Fraction(delta)
        dp, dq = frac.numerator, frac.denominator

    def dot(u, v):
        return sum(x * y for x, y in zip(u, v))

    d = [1] * (n + 1)
    lam = [[0] * n for _ in range(n)]
    d[1] = dot(b[0], b[0])
    if d[1] == 0:
        raise InputError("lll_reduce requires linearly independent rows")
    k = 2
    k_max = 1

    def red(k_, l_):
        # indices here are 1-based like the classical description
        if 2 * abs(lam[k_ - 1][l_ - 1]) > d[l_]:
            q = (2 * lam[k_ - 1][l_ - 1] + d[l_]) // (2 * d[l_])
            b[k_ - 1] = [x - q * y for x, y in zip(b[k_ - 1], b[l_ - 1])]
            lam[k_ - 1][l_ - 1] -= q * d[l_]
            for i in range(1, l_):
                lam[k_ - 1][i - 1] -= q * lam[l_ - 1][i - 1]

    while k <= n:
        if k > k_max:
            k_max = k
            for j in range(1, k + 1):
                u = dot(b[k - 1], b[j - 1])
                for i in range(1, j):
                    u = (d[i] * u - lam[k - 1][i - 1] * lam[j - 1][i - 1]) // d[i - 1]
                if j < k:
                    lam[k - 1][j - 1] = u
                else:
                    d[k] = u
                    if d[k] == 0:
                        raise InputError("lll_reduce requires linearly independent rows")
        while True:
            red(k, k - 1)
            if dq * (d[k] * d[k - 2] + lam[k - 1][k - 2] ** 2) < dp * d[k - 1] ** 2:
                # swap b_k and b_{k-1}, update the integer state
                b[k - 1], b[k - 2] = b[k - 2], b[k - 1]
                for j in range(1, k - 1):
                    lam[k - 1][j - 1], lam[k - 2][j - 1] = (
                        lam[k - 2][j - 1], lam[k - 1][j - 1])
                lam_k = lam[k - 1][k - 2]
                bb = (d[k - 2] * d[k] + lam_k * lam_k) // d[k - 1]
                for i in range(k + 1, k_max + 1):
                    t = lam[i - 1][k - 1]
                    lam[i - 1][k - 1] = (
                        d[k] * lam[i - 1][k - 2] - lam_k * t) // d[k - 1]
                    lam[i - 1][k - 2] = (
                        bb * t + lam_k * lam[i - 1][k - 1]) // d[k]
                d[k - 1] = bb
                k = max(2, k - 1)
            else:
                for l in range(k - 2, 0, -1):
                    red(k, l)
                k += 1
                break
    return b
