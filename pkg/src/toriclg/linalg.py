"""Exact integer and rational linear algebra on small dense matrices.

Matrices are lists of row lists. Everything runs over Python ints and
fractions.Fraction; no floating point. Sizes in this project stay below
~16x16, so cubic algorithms are fine.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


def vec_gcd(v):
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def mat_mul(a, b):
    bt = list(zip(*b))
    return [[dot(row, col) for col in bt] for row in a]


def mat_vec(a, v):
    return [dot(row, v) for row in a]


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(a):
    return [list(row) for row in zip(*a)]


def det(a):
    """Determinant by fraction-free Bareiss elimination (exact int)."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(map(int, row)) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def rank(a):
    if not a:
        return 0
    m = [[Fraction(x) for x in row] for row in a]
    rows, cols = len(m), len(m[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c]
        m[r] = [x / inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == rows:
            break
    return r


def solve(a, b):
    """Solve a @ x = b over the rationals; None if inconsistent.

    `a` has one row per equation. Returns one particular solution (free
    variables set to 0).
    """
    rows = len(a)
    if rows == 0:
        return []
    cols = len(a[0])
    m = [[Fraction(x) for x in a[i]] + [Fraction(b[i])] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c]
        m[r] = [x / inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if m[i][cols] != 0:
            return None
    x = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        x[c] = m[i][cols]
    return x


def nullspace(a):
    """Rational basis of {x : a @ x = 0}, one row per basis vector."""
    rows = len(a)
    if rows == 0:
        return None  # ambiguous without column count; callers avoid this
    cols = len(a[0])
    m = [[Fraction(x) for x in row] for row in a]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c]
        m[r] = [x / inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -m[i][fc]
        basis.append(v)
    return basis


def clear_denominators(v):
    """Scale a rational vector to a primitive integer vector."""
    from math import lcm

    den = 1
    for x in v:
        den = lcm(den, Fraction(x).denominator)
    w = [int(Fraction(x) * den) for x in v]
    g = vec_gcd(w)
    if g > 1:
        w = [x // g for x in w]
    return w


def invert_unimodular(u):
    """Exact inverse of an integer matrix with det +-1."""
    n = len(u)
    aug = [[Fraction(x) for x in u[i]] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next(i for i in range(c, n) if aug[i][c] != 0)
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = aug[c][c]
        aug[c] = [x / inv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    out = [[aug[i][n + j] for j in range(n)] for i in range(n)]
    assert all(x.denominator == 1 for row in out for x in row)
    return [[int(x) for x in row] for row in out]


@dataclass(frozen=True)
class SmithDecomposition:
    """U @ A @ V = diag(divisors), with U, V unimodular.

    `divisors` is the full diagonal (min(m, n) entries, zeros at the end),
    nonnegative, with d1 | d2 | ... on the nonzero part.
    """

    left: tuple
    divisors: tuple
    right: tuple

    def diag_matrix(self, shape):
        m, n = shape
        d = [[0] * n for _ in range(m)]
        for i, x in enumerate(self.divisors):
            d[i][i] = x
        return d


def smith_decomposition(a):
    """Smith normal form over the integers.

    Returns a SmithDecomposition for an m x n integer matrix (either may
    be zero). Elementary row operations accumulate in `left`, column
    operations in `right`.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    d = [[int(x) for x in row] for row in a]
    u = identity(m)
    v = identity(n)

    def row_op(i, j, q):  # row_i -= q * row_j
        d[i] = [x - q * y for x, y in zip(d[i], d[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, q):  # col_i -= q * col_j
        for row in d:
            row[i] -= q * row[j]
        for row in v:
            row[i] -= q * row[j]

    def row_swap(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def col_swap(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def row_neg(i):
        d[i] = [-x for x in d[i]]
        u[i] = [-x for x in u[i]]

    def diagonalize():
        t = 0
        while t < min(m, n):
            # bring a nonzero pivot of minimal magnitude to (t, t)
            piv = None
            for i in range(t, m):
                for j in range(t, n):
                    if d[i][j] != 0 and (piv is None or abs(d[i][j]) < abs(d[piv[0]][piv[1]])):
                        piv = (i, j)
            if piv is None:
                break
            if piv[0] != t:
                row_swap(t, piv[0])
            if piv[1] != t:
                col_swap(t, piv[1])
            while True:
                dirty = False
                for i in range(t + 1, m):
                    if d[i][t] != 0:
                        q = d[i][t] // d[t][t]
                        row_op(i, t, q)
                        if d[i][t] != 0:
                            row_swap(i, t)
                            dirty = True
                for j in range(t + 1, n):
                    if d[t][j] != 0:
                        q = d[t][j] // d[t][t]
                        col_op(j, t, q)
                        if d[t][j] != 0:
                            col_swap(j, t)
                            dirty = True
                if not dirty:
                    break
            if d[t][t] < 0:
                row_neg(t)
            t += 1

    def chain_violation():
        k = min(m, n)
        for i in range(k - 1):
            a_i, a_j = d[i][i], d[i + 1][i + 1]
            if a_j != 0 and (a_i == 0 or a_j % a_i != 0):
                return i
        return None

    diagonalize()
    guard = 0
    while (i := chain_violation()) is not None:
        # fold column i+1 into column i and re-reduce; each pass replaces
        # the pair with (gcd, lcm) so this terminates
        col_op(i, i + 1, -1)
        diagonalize()
        guard += 1
        assert guard < 1000, "smith normal form failed to converge"
    divisors = tuple(d[i][i] for i in range(min(m, n)))
    return SmithDecomposition(
        left=tuple(tuple(row) for row in u),
        divisors=divisors,
        right=tuple(tuple(row) for row in v),
    )


def elementary_divisors(a):
    """Nonzero elementary divisors of an integer matrix."""
    return tuple(x for x in smith_decomposition(a).divisors if x != 0)


def kernel_basis(a):
    """Saturated integer basis of {x row vector : x @ a = 0}.

    Rows of the result form a basis of the full integer kernel lattice.
    """
    m = len(a)
    if m == 0:
        return []
    snf = smith_decomposition(a)
    r = len(elementary_divisors(a))
    return [list(snf.left[i]) for i in range(r, m)]


def lattice_basis(generators):
    """Integer-matrix basis for the lattice generated by rational row vectors.

    Returns rows over Fraction spanning the same lattice, in Hermite-like
    echelon shape (deterministic).
    """
    from math import lcm

    if not generators:
        return []
    den = 1
    for row in generators:
        for x in row:
            den = lcm(den, Fraction(x).denominator)
    int_rows = [[int(Fraction(x) * den) for x in row] for row in generators]
    n = len(int_rows[0])
    snf = smith_decomposition(int_rows)
    # rowspan(A) = rowspan(U^-1 D V^-1) = rowspan(D V^-1); rows of D V^-1 are
    # d_i * (row i of V^-1)
    vinv = invert_unimodular([list(r) for r in snf.right])
    basis = []
    for i, dv in enumerate(snf.divisors):
        if dv != 0:
            basis.append([Fraction(dv * vinv[i][j], den) for j in range(n)])
    return basis


def in_lattice(basis, v):
    """Whether rational vector v lies in the lattice spanned by basis rows."""
    coords = coords_in_basis(basis, v)
    return coords is not None and all(c.denominator == 1 for c in coords)


def coords_in_basis(basis, v):
    """Rational coordinates of v in the given row basis, or None."""
    if not basis:
        return [] if all(Fraction(x) == 0 for x in v) else None
    at = transpose(basis)
    return solve(at, list(v))


def is_unimodular(m):
    return abs(det(m)) == 1
