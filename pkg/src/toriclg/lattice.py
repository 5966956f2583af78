"""Integer lattice geometry: vectors, cones, fans, and subdivisions.

Lattice vectors are plain tuples of Python ints. Cones store their
generators primitivized in construction order (chart computations depend
on that order); canonical lexicographic sorting happens only in outputs
such as fan polytopes and serialized files.
"""

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .errors import DegenerateInput, DimMismatch, NonPrimitiveRay, NotInterior, NotSimplicial
from .geometry import ConeGeometry, fm_feasible, hull_vertices, point_in_hull
from .linalg import clear_denominators, det, dot, rank, smith_decomposition, solve, vec_gcd

# re-exported here because the lattice layer owns the integer-matrix contract
from .linalg import SmithDecomposition  # noqa: F401


def as_vector(v):
    """Validate and normalize a lattice vector to a tuple of ints."""
    t = tuple(v)
    if not t:
        raise DegenerateInput("lattice vectors must have dimension >= 1")
    for x in t:
        if not isinstance(x, int):
            if isinstance(x, Fraction) and x.denominator == 1:
                continue
            raise DegenerateInput(f"non-integer coordinate {x!r}")
    return tuple(int(x) for x in t)


def primitivize(v):
    """(primitive vector, multiplier) with multiplier * primitive == v."""
    t = as_vector(v)
    g = vec_gcd(t)
    if g == 0:
        raise DegenerateInput("cannot primitivize the zero vector")
    return tuple(x // g for x in t), g


def is_primitive(v):
    return vec_gcd(as_vector(v)) == 1


class Cone:
    """A strongly convex rational polyhedral cone.

    Generators are stored primitive, deduplicated, in construction order.
    Construction rejects zero generators and cones containing a line.
    """

    def __init__(self, generators):
        gens = []
        seen = set()
        for g in generators:
            p, _ = primitivize(g)
            if p not in seen:
                seen.add(p)
                gens.append(p)
        if not gens:
            raise DegenerateInput("cone needs at least one nonzero generator")
        dims = {len(g) for g in gens}
        if len(dims) != 1:
            raise DimMismatch("cone generators of mixed dimension")
        self.generators = tuple(gens)
        self.dim = dims.pop()
        if len(gens) > 1 and point_in_hull((0,) * self.dim, gens):
            raise DegenerateInput("cone is not strongly convex (contains a line)")

    @cached_property
    def geometry(self):
        return ConeGeometry(self.generators)

    @property
    def rank(self):
        return self.geometry.rank

    @property
    def is_simplicial(self):
        return len(self.generators) == self.rank

    @property
    def is_full_dimensional(self):
        return self.rank == self.dim

    def contains(self, v, strict=False):
        v = tuple(Fraction(x) for x in v)
        if len(v) != self.dim:
            raise DimMismatch("vector/cone dimension mismatch")
        if self.is_simplicial:
            coeffs = solve([list(c) for c in zip(*self.generators)], list(v))
            if coeffs is None:
                return False
            return all(c > 0 for c in coeffs) if strict else all(c >= 0 for c in coeffs)
        return self.geometry.contains(v, strict=strict)

    @cached_property
    def extreme_rays(self):
        """Canonical sorted tuple of the primitive extreme rays."""
        gens = list(self.generators)
        if len(gens) == 1:
            return (gens[0],)
        out = []
        for i, g in enumerate(gens):
            others = gens[:i] + gens[i + 1 :]
            if not ConeGeometry(others).contains(g):
                out.append(g)
        return tuple(sorted(out))

    def __eq__(self, other):
        return isinstance(other, Cone) and self.dim == other.dim and self.extreme_rays == other.extreme_rays

    def __hash__(self):
        return hash((self.dim, self.extreme_rays))

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.generators)
        return f"Cone[{gens}]"


def cone_index(c):
    """Index (multiplicity) of a simplicial full-dimensional cone.

    Equals the order of the quotient of the ambient lattice by the
    sublattice the generators span; 1 exactly for smooth cones.
    """
    if not (c.is_simplicial and c.is_full_dimensional):
        raise NotSimplicial("cone index needs a simplicial full-dimensional cone")
    return abs(det([list(g) for g in c.generators]))


def is_smooth_cone(c):
    if not c.is_simplicial:
        raise NotSimplicial("smoothness test needs a simplicial cone")
    if c.is_full_dimensional:
        return cone_index(c) == 1
    divisors = smith_decomposition([list(g) for g in c.generators]).divisors
    return all(d == 1 for d in divisors if d != 0)


def is_gorenstein_cone(c):
    """Whether some integer dual vector evaluates to 1 on every generator.

    Solved exactly: G m = (1,...,1) over the integers via Smith normal
    form of the generator matrix G.
    """
    g = [list(row) for row in c.generators]
    ones = [1] * len(g)
    snf = smith_decomposition(g)
    u_ones = [dot(row, ones) for row in snf.left]
    k = len(snf.divisors)
    y = [0] * len(snf.right)
    for i, rhs in enumerate(u_ones):
        d = snf.divisors[i] if i < k else 0
        if d == 0:
            if rhs != 0:
                return False
        else:
            if rhs % d != 0:
                return False
            y[i] = rhs // d
    return True  # m = snf.right @ y is an integer solution


def star_subdivision_pieces(c, w):
    """Cones replacing `c` under star subdivision at interior ray w."""
    w, mult = primitivize(w)
    if mult != 1:
        raise NonPrimitiveRay(f"subdivision ray must be primitive, got multiplier {mult}")
    if len(w) != c.dim:
        raise DimMismatch("ray/cone dimension mismatch")
    if c.rank == 1:
        raise NotInterior("cannot star-subdivide a one-dimensional cone")
    if not c.contains(w, strict=True):
        raise NotInterior(f"{w} is not in the relative interior of {c}")
    pieces = []
    for normal, tight in c.geometry.facets:
        if dot(normal, w) > 0:
            gens = [c.generators[i] for i in sorted(tight)] + [w]
            pieces.append(Cone(gens))
    return pieces


@dataclass
class ValidationReport:
    """Outcome of a geometric validation with witnessed failures."""

    ok: bool
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def fail(self, message, witness=None):
        self.ok = False
        self.failures.append((message, witness))

    def __str__(self):
        if self.ok:
            body = "valid"
        else:
            body = "; ".join(
                m + (f" (witness {w})" if w is not None else "") for m, w in self.failures
            )
        return f"ValidationReport({body})"


def _facet_key(piece, tight):
    """Canonical key for a facet cone: sorted primitive extreme rays."""
    gens = [piece.generators[i] for i in sorted(tight)]
    return Cone(gens).extreme_rays


def validate_subdivision(parent, pieces):
    """Check that `pieces` subdivide `parent` exactly.

    Union equals the parent (piece generators inside the parent plus
    facet pairing: interior facets shared by exactly two pieces, boundary
    facets lying on parent facets) and relative interiors are pairwise
    disjoint. Failures carry witnessing vectors.
    """
    pieces = list(pieces)
    report = ValidationReport(ok=True)
    if not pieces:
        report.fail("no pieces supplied")
        return report
    if any(p.dim != parent.dim for p in pieces):
        raise DimMismatch("pieces and parent must share ambient dimension")

    for p in pieces:
        if p.rank != parent.rank:
            report.fail(f"piece {p} has rank {p.rank} < parent rank {parent.rank}")
    if not report.ok:
        return report

    # (a) containment of every piece generator
    for p in pieces:
        for g in p.generators:
            if not parent.contains(g):
                report.fail("piece generator outside parent", g)
    if not report.ok:
        return report

    parent_facets = parent.geometry.facets

    def on_parent_boundary(gens):
        return any(all(dot(n, g) == 0 for g in gens) for n, _ in parent_facets)

    # (b) facet pairing
    interior = {}
    for pi, p in enumerate(pieces):
        for normal, tight in p.geometry.facets:
            gens = [p.generators[i] for i in sorted(tight)]
            if on_parent_boundary(gens):
                continue
            key = _facet_key(p, tight)
            interior.setdefault(key, []).append((pi, normal))
    for key, owners in interior.items():
        if len(owners) == 2 and owners[0][0] != owners[1][0]:
            continue
        if len(owners) > 2:
            report.fail(f"interior facet shared by {len(owners)} pieces", key[0])
            continue
        pi, normal = owners[0]
        witness = _gap_witness(parent, pieces, key, normal)
        covered = any(q.contains(witness) for q in pieces)
        if covered:
            report.fail("interior facet not matched face-to-face", witness)
        else:
            report.fail("pieces do not cover parent", witness)

    # (c) pairwise disjoint relative interiors
    for i in range(len(pieces)):
        for j in range(i + 1, len(pieces)):
            w = _common_interior_point(pieces[i], pieces[j])
            if w is not None:
                report.fail(
                    f"pieces {i} and {j} have overlapping interiors", tuple(w)
                )
    return report


def _gap_witness(parent, pieces, facet_rays, inward_normal):
    """Integer point just outside an unmatched facet, inside the parent."""
    base = tuple(sum(col) for col in zip(*facet_rays))
    scale = 1
    for _ in range(64):
        w = tuple(scale * b - n for b, n in zip(base, inward_normal))
        if parent.contains(w, strict=True):
            return w
        scale *= 2
    return base


def _common_interior_point(a, b):
    """Integer point in both relative interiors, or None."""
    rows = []
    for cone in (a, b):
        for e in cone.geometry.span_eqs:
            rows.append((list(e), 0, False))
            rows.append(([-x for x in e], 0, False))
        for n, _ in cone.geometry.facets:
            rows.append((list(n), 0, True))
    witness = fm_feasible(rows, a.dim)
    if witness is None:
        return None
    return clear_denominators(witness)


class Fan:
    """A collection of cones over a shared ray list.

    Rays are primitive and kept in the given order; cones are index sets
    into the ray list. Pairwise face compatibility is only checked by the
    explicit validate_fan call (the degeneration bookkeeping in this
    toolkit routinely holds stage-wise subdivisions that are not globally
    compatible fans).
    """

    def __init__(self, dim, rays, cones):
        self.dim = int(dim)
        self.rays = []
        seen = {}
        for r in rays:
            v = as_vector(r)
            if len(v) != self.dim:
                raise DimMismatch("ray dimension mismatch")
            if not is_primitive(v):
                raise NonPrimitiveRay(f"ray {v} is not primitive")
            if v in seen:
                raise DegenerateInput(f"duplicate ray {v}")
            seen[v] = len(self.rays)
            self.rays.append(v)
        self._ray_index = seen
        cone_list = []
        for c in cones:
            idx = tuple(sorted(int(i) for i in c))
            if any(i < 0 or i >= len(self.rays) for i in idx):
                raise DegenerateInput(f"cone {idx} references a missing ray")
            Cone([self.rays[i] for i in idx])  # validates strong convexity
            cone_list.append(idx)
        self.rays = tuple(self.rays)
        self.cones = tuple(cone_list)

    def cone(self, spec):
        """Cone object for a cone given by position or by ray index-set."""
        idx = self.cone_indices(spec)
        return Cone([self.rays[i] for i in idx])

    def cone_indices(self, spec):
        if isinstance(spec, int):
            return self.cones[spec]
        idx = tuple(sorted(int(i) for i in spec))
        if idx not in self.cones:
            raise DegenerateInput(f"cone {idx} is not listed in the fan")
        return idx

    def ray_index(self, v):
        return self._ray_index.get(as_vector(v))

    def star_subdivide(self, spec, w):
        """Replace one listed cone by its star subdivision at ray w."""
        idx = self.cone_indices(spec)
        target = Cone([self.rays[i] for i in idx])
        pieces = star_subdivision_pieces(target, w)
        w = as_vector(w)
        rays = list(self.rays)
        if w in self._ray_index:
            w_idx = self._ray_index[w]
        else:
            rays.append(w)
            w_idx = len(rays) - 1
        by_gen = {g: i for i, g in enumerate(self.rays)}
        by_gen[w] = w_idx
        new_cones = []
        for c in self.cones:
            if c == idx:
                for p in pieces:
                    new_cones.append(tuple(sorted(by_gen[g] for g in p.generators)))
            else:
                new_cones.append(c)
        return Fan(self.dim, rays, new_cones)

    def subdivide_at_ray(self, w):
        """Star subdivision of the whole fan at a primitive ray.

        Unlike star_subdivide, the ray may lie on a face shared by several
        listed cones; every cone containing it is refined. Cones not
        containing the ray are kept unchanged.
        """
        w, mult = primitivize(w)
        if mult != 1:
            raise NonPrimitiveRay(f"subdivision ray must be primitive, got multiplier {mult}")
        touched = False
        rays = list(self.rays)
        if w in self._ray_index:
            w_idx = self._ray_index[w]
        else:
            rays.append(w)
            w_idx = len(rays) - 1
        by_gen = {g: i for i, g in enumerate(self.rays)}
        by_gen[w] = w_idx
        new_cones = []
        for c in self.cones:
            cone = Cone([self.rays[i] for i in c])
            if not cone.contains(w):
                new_cones.append(c)
                continue
            touched = True
            for normal, tight in cone.geometry.facets:
                if dot(normal, w) > 0:
                    gens = [cone.generators[i] for i in sorted(tight)] + [w]
                    new_cones.append(tuple(sorted(by_gen[g] for g in gens)))
            if cone.rank == 1:
                new_cones.append(c)
        if not touched:
            raise NotInterior(f"{w} is not in the support of any listed cone")
        dedup = []
        for c in new_cones:
            if c not in dedup:
                dedup.append(c)
        return Fan(self.dim, rays, dedup)

    def fan_polytope(self):
        """(vertices, non-vertex rays) of the convex hull of the rays."""
        if len(self.rays) < self.dim + 1 or rank([list(r) for r in self.rays]) < self.dim:
            raise DegenerateInput("fan rays must span the space (need >= dim+1 spanning rays)")
        return hull_vertices(self.rays)

    def validate(self):
        """Full pairwise face-compatibility check. May be expensive."""
        report = ValidationReport(ok=True)
        cones = [Cone([self.rays[i] for i in c]) for c in self.cones]
        for i in range(len(cones)):
            for j in range(i + 1, len(cones)):
                bad = _intersection_face_defect(cones[i], cones[j])
                if bad is not None:
                    report.fail(
                        f"cones {self.cones[i]} and {self.cones[j]} do not meet in a common face",
                        bad,
                    )
        return report

    def to_json(self):
        return json.dumps(
            {"dim": self.dim, "rays": [list(r) for r in self.rays], "cones": [list(c) for c in self.cones]},
            indent=2,
        )

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        try:
            return cls(data["dim"], data["rays"], data["cones"])
        except KeyError as exc:
            raise DegenerateInput(f"fan JSON missing field {exc}") from exc

    def __repr__(self):
        return f"Fan(dim={self.dim}, rays={len(self.rays)}, cones={len(self.cones)})"


def fan_polytope(f):
    """Vertices and non-vertex rays of the convex hull of a fan's rays."""
    return f.fan_polytope()


def star_subdivide(f, c, w):
    """Functional form of Fan.star_subdivide: replace one listed cone."""
    return f.star_subdivide(c, w)


def _intersection_rays(a, b):
    """Primitive extreme rays of the intersection of two cones."""
    eqs = [list(e) for e in a.geometry.span_eqs] + [list(e) for e in b.geometry.span_eqs]
    ineqs = [list(n) for n, _ in a.geometry.facets] + [list(n) for n, _ in b.geometry.facets]
    dim = a.dim
    eq_rank = rank(eqs) if eqs else 0
    need = dim - eq_rank - 1
    if need < 0:
        return []
    from itertools import combinations

    found = set()
    from .linalg import nullspace as _null

    for subset in combinations(range(len(ineqs)), need):
        rows = eqs + [ineqs[i] for i in subset]
        if rows and rank(rows) != dim - 1:
            continue
        space = _null(rows) if rows else [[Fraction(int(i == j)) for j in range(dim)] for i in range(dim)]
        if len(space) != 1:
            continue
        v = clear_denominators(space[0])
        for cand in (v, tuple(-x for x in v)):
            if a.contains(cand) and b.contains(cand):
                found.add(tuple(cand))
    return sorted(found)


def _intersection_face_defect(a, b):
    """None if a∩b is a face of both; else a witnessing generator."""
    rays = _intersection_rays(a, b)
    if not rays:
        return None  # the zero cone is a face of every strongly convex cone
    for cone in (a, b):
        tight_normals = [
            n for n, _ in cone.geometry.facets if all(dot(n, r) == 0 for r in rays)
        ]
        face_gens = [
            g for g in cone.generators if all(dot(n, g) == 0 for n in tight_normals)
        ]
        inter = ConeGeometry(rays)
        for g in face_gens:
            if not inter.contains(g):
                return g
    return None
