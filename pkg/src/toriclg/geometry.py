"""Exact convex geometry at desk scale.

Hull descriptions, cone facet structure, membership tests, and a small
Fourier-Motzkin feasibility solver. All arithmetic is rational; brute
force over subsets is acceptable because every polytope and cone in this
project has at most ~16 defining points in dimension <= 6.
"""

from fractions import Fraction
from itertools import combinations
from math import lcm

from .linalg import clear_denominators, dot, nullspace, rank, solve


def _as_fracs(v):
    return [Fraction(x) for x in v]


def scale_primitive(coeffs, rhs):
    """Jointly scale (coeffs, rhs) to coprime integers, keeping orientation."""
    den = 1
    for x in list(coeffs) + [rhs]:
        den = lcm(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in coeffs]
    r = int(Fraction(rhs) * den)
    from math import gcd

    g = 0
    for x in ints + [r]:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
        r //= g
    return tuple(ints), r


class HullDescription:
    """Affine-hull equations and facet inequalities of a finite point set.

    equations: list of (a, b) with a.x == b on the hull.
    facets: list of (a, b, tight) with a.x <= b on the hull and `tight`
    the indices of input points achieving equality.
    """

    def __init__(self, points):
        pts = [tuple(_as_fracs(p)) for p in points]
        if not pts:
            raise ValueError("empty point set")
        self.points = pts
        self.dim = len(pts[0])
        p0 = pts[0]
        diffs = [[p[i] - p0[i] for i in range(self.dim)] for p in pts[1:]]
        if diffs:
            eq_normals = nullspace(diffs)
        else:
            eq_normals = [[Fraction(int(i == j)) for j in range(self.dim)] for i in range(self.dim)]
        self.equations = []
        for a in eq_normals:
            coeffs, rhs = scale_primitive(a, dot(a, p0))
            self.equations.append((coeffs, rhs))
        self.affine_dim = self.dim - len(self.equations)
        self.facets = self._compute_facets()

    def _compute_facets(self):
        h = self.affine_dim
        pts = self.points
        if h == 0:
            return []
        seen = {}
        eqn = [list(map(Fraction, a)) for a, _ in self.equations]
        for subset in combinations(range(len(pts)), h):
            base = pts[subset[0]]
            rows = [[pts[i][j] - base[j] for j in range(self.dim)] for i in subset[1:]]
            if rows and rank(rows) != h - 1:
                continue
            null = nullspace(rows) if rows else [
                [Fraction(int(i == j)) for j in range(self.dim)] for i in range(self.dim)
            ]
            # pick a null vector outside the affine-hull normal space
            cand = None
            for n in null:
                if rank(eqn + [n]) > len(eqn):
                    cand = n
                    break
            if cand is None:
                continue
            b = dot(cand, base)
            vals = [dot(cand, p) for p in pts]
            if all(v <= b for v in vals):
                pass
            elif all(v >= b for v in vals):
                cand = [-x for x in cand]
                b = -b
                vals = [-v for v in vals]
            else:
                continue
            tight = frozenset(i for i, v in enumerate(vals) if v == b)
            tight_rows = [
                [pts[i][j] - pts[min(tight)][j] for j in range(self.dim)] for i in tight
            ]
            if rank(tight_rows) != h - 1:
                continue
            if tight not in seen:
                coeffs, rhs = scale_primitive(cand, b)
                seen[tight] = (coeffs, rhs, tight)
        return list(seen.values())

    def contains(self, p):
        p = _as_fracs(p)
        for a, b in self.equations:
            if dot(a, p) != b:
                return False
        return all(dot(a, p) <= b for a, b, _ in self.facets)

    def contains_dilated(self, p, factor):
        """Whether p lies in factor * (this hull), factor a nonneg rational."""
        factor = Fraction(factor)
        p = _as_fracs(p)
        for a, b in self.equations:
            if dot(a, p) != b * factor:
                return False
        return all(dot(a, p) <= b * factor for a, b, _ in self.facets)

    def vertex_indices(self):
        """Indices of input points that are vertices of the hull."""
        if self.affine_dim == 0:
            first = {tuple(self.points[0])}
            return [i for i, p in enumerate(self.points) if tuple(p) in first][:1]
        out = []
        eqn = [list(map(Fraction, a)) for a, _ in self.equations]
        for i, p in enumerate(self.points):
            normals = [list(map(Fraction, a)) for a, b, tight in self.facets if i in tight]
            if rank(eqn + normals) == self.dim:
                out.append(i)
        return out


def point_in_hull(p, points):
    return HullDescription(points).contains(p)


def hull_vertices(points):
    """(vertices, non-vertices) of the convex hull, lexicographically sorted."""
    uniq = sorted({tuple(int(x) for x in p) for p in points})
    desc = HullDescription(uniq)
    vi = set(desc.vertex_indices())
    verts = [uniq[i] for i in sorted(vi)]
    others = [uniq[i] for i in range(len(uniq)) if i not in vi]
    return verts, others


class ConeGeometry:
    """Facet-inequality description of a polyhedral cone from generators.

    Generators are integer row vectors. The description keeps the span
    equations separately so lower-dimensional cones work too.
    """

    def __init__(self, generators):
        self.generators = [tuple(int(x) for x in g) for g in generators]
        if not self.generators:
            raise ValueError("cone needs at least one generator")
        self.dim = len(self.generators[0])
        self.rank = rank(self.generators)
        span_eqs = nullspace([list(g) for g in self.generators])
        self.span_eqs = [clear_denominators(e) for e in span_eqs]
        self.facets = self._compute_facets()

    def _compute_facets(self):
        """Facets as (normal, tight generator index frozenset).

        Normals are full-space integer vectors, nonnegative on the cone,
        vanishing exactly on a rank-(r-1) face. Only meaningful modulo the
        span equations, which is fine for membership on the span.
        """
        gens = self.generators
        r = self.rank
        if r == 0:
            return []
        seen = {}
        span_norms = [list(map(Fraction, e)) for e in self.span_eqs]
        subset_size = r - 1
        idxs = range(len(gens))
        for subset in combinations(idxs, subset_size):
            rows = [list(map(Fraction, gens[i])) for i in subset]
            if rows and rank(rows) != subset_size:
                continue
            null = nullspace(rows) if rows else [
                [Fraction(int(i == j)) for j in range(self.dim)] for i in range(self.dim)
            ]
            cand = None
            for n in null:
                if rank(span_norms + [n]) > len(span_norms):
                    cand = n
                    break
            if cand is None:
                continue
            vals = [dot(cand, g) for g in gens]
            if all(v >= 0 for v in vals):
                pass
            elif all(v <= 0 for v in vals):
                cand = [-x for x in cand]
                vals = [-v for v in vals]
            else:
                continue
            tight = frozenset(i for i, v in enumerate(vals) if v == 0)
            tight_rows = [list(gens[i]) for i in tight]
            if not tight_rows or rank(tight_rows) != r - 1:
                continue
            if tight not in seen:
                coeffs, _ = scale_primitive(cand, 0)
                seen[tight] = (coeffs, tight)
        return list(seen.values())

    def contains(self, v, strict=False):
        """Membership of v; strict=True tests the relative interior."""
        v = [Fraction(x) for x in v]
        for e in self.span_eqs:
            if dot(e, v) != 0:
                return False
        if self.rank == 0:
            return all(x == 0 for x in v) and not strict
        for n, _ in self.facets:
            val = dot(n, v)
            if val < 0 or (strict and val == 0):
                return False
        return True

    def facet_generator_sets(self):
        return [tuple(sorted(t)) for _, t in self.facets]


def fm_feasible(rows, nvars):
    """Fourier-Motzkin feasibility for rows (coeffs, rhs, strict).

    Each row means coeffs . x >= rhs (strictly when strict). Returns a
    rational witness vector, or None when infeasible.
    """
    rows = [([Fraction(c) for c in a], Fraction(b), s) for a, b, s in rows]
    stages = []
    cur = rows
    for var in range(nvars):
        stages.append(cur)
        pos = [r for r in cur if r[0][var] > 0]
        neg = [r for r in cur if r[0][var] < 0]
        zero = [r for r in cur if r[0][var] == 0]
        nxt = list(zero)
        for p in pos:
            for q in neg:
                cp, cq = p[0][var], -q[0][var]
                coeffs = [a * cq + b * cp for a, b in zip(p[0], q[0])]
                rhs = p[1] * cq + q[1] * cp
                nxt.append((coeffs, rhs, p[2] or q[2]))
        seen = set()
        dedup = []
        for a, b, s in nxt:
            key_coeffs, key_rhs = scale_primitive(a, b)
            key = (key_coeffs, key_rhs, s)
            if key not in seen:
                seen.add(key)
                dedup.append((a, b, s))
        cur = dedup
    for a, b, s in cur:
        if s and not 0 > b:
            return None
        if not s and not 0 >= b:
            return None
    # back-substitute
    x = [Fraction(0)] * nvars
    for var in reversed(range(nvars)):
        lo, lo_strict = None, False
        hi, hi_strict = None, False
        for a, b, s in stages[var]:
            coef = a[var]
            if coef == 0:
                continue
            rest = b - sum(a[j] * x[j] for j in range(var + 1, nvars))
            bound = rest / coef
            if coef > 0:  # x_var >= bound
                if lo is None or bound > lo:
                    lo, lo_strict = bound, s
                elif bound == lo:
                    lo_strict = lo_strict or s
            else:  # x_var <= bound
                if hi is None or bound < hi:
                    hi, hi_strict = bound, s
                elif bound == hi:
                    hi_strict = hi_strict or s
        if lo is None and hi is None:
            x[var] = Fraction(0)
        elif lo is None:
            x[var] = hi - 1
        elif hi is None:
            x[var] = lo + 1
        else:
            if lo > hi or (lo == hi and (lo_strict or hi_strict)):
                return None  # numerically unreachable if FM was sound
            x[var] = (lo + hi) / 2
    return x


def polytope_vertices(rows, nvars):
    """Vertices of {x : coeffs . x >= rhs for each row}.

    Brute-force basic solutions. Rows are (coeffs, rhs) rational pairs;
    the polytope must be bounded for the result to be its vertex set.
    """
    verts = []
    seen = set()
    for subset in combinations(range(len(rows)), nvars):
        a = [list(rows[i][0]) for i in subset]
        if rank(a) != nvars:
            continue
        b = [rows[i][1] for i in subset]
        x = solve(a, b)
        if x is None:
            continue
        if all(dot(c, x) >= r for c, r in rows):
            key = tuple(x)
            if key not in seen:
                seen.add(key)
                verts.append(x)
    return verts
