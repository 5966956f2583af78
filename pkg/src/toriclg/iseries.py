"""Regularized quantum-period coefficients for toric data by class enumeration.

Works in the Gale-dual picture: curve classes are integer vectors in the
relation lattice of the ray matrix, divisors pair with a class through
its coordinates, and nef-partition complete intersections contribute
factorials of the bundle pairings. Coefficients are the standard toric
complete-intersection constant terms

    sum over classes of  d! * prod_j (L_j . b)! / prod_i (D_i . b)!

taken over classes with every pairing nonnegative and anticanonical
degree d. All enumeration is exact lattice-point listing inside the
bounded degree slice; an unbounded slice is an error carrying a witness.
"""

import json
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import DegenerateInput, InvalidParameters, NegativePairing, UnboundedSlice
from .geometry import fm_feasible, polytope_vertices
from .lattice import as_vector
from .laurent import ParamPoly
from .linalg import clear_denominators, dot, kernel_basis, rank


def relation_lattice(rays):
    """Saturated integer basis of the relations among the rays.

    Rows b satisfy sum_i b_i * ray_i = 0; they present the curve-class
    lattice of the complete toric picture.
    """
    rays = [list(as_vector(r)) for r in rays]
    dim = len(rays[0])
    if rank(rays) < dim:
        raise DegenerateInput("rays must span the ambient space")
    return [tuple(row) for row in kernel_basis(rays)]


@dataclass(frozen=True)
class ToricCIData:
    """Rays, relation basis, nef partition, and an optional marked divisor."""

    rays: tuple
    nef_partition: tuple = ()
    relation_basis: tuple = None
    divisor_of_interest: tuple = None

    def __post_init__(self):
        rays = tuple(as_vector(r) for r in self.rays)
        object.__setattr__(self, "rays", rays)
        parts = tuple(tuple(sorted(int(i) for i in part)) for part in self.nef_partition)
        seen = set()
        for part in parts:
            for i in part:
                if i < 0 or i >= len(rays):
                    raise InvalidParameters(f"nef partition index {i} out of range")
                if i in seen:
                    raise InvalidParameters("nef partition subsets must be disjoint")
                seen.add(i)
        object.__setattr__(self, "nef_partition", parts)
        basis = self.relation_basis
        if basis is None:
            basis = relation_lattice(rays)
        basis = tuple(tuple(int(x) for x in row) for row in basis)
        for row in basis:
            combo = [sum(row[i] * rays[i][j] for i in range(len(rays))) for j in range(len(rays[0]))]
            if any(x != 0 for x in combo):
                raise InvalidParameters(f"relation basis row {row} is not a relation")
        object.__setattr__(self, "relation_basis", basis)
        if self.divisor_of_interest is not None:
            e = tuple(int(x) for x in self.divisor_of_interest)
            if len(e) != len(rays):
                raise InvalidParameters("divisor functional must have one coefficient per ray")
            object.__setattr__(self, "divisor_of_interest", e)

    @property
    def num_rays(self):
        return len(self.rays)

    @property
    def picard_rank(self):
        return len(self.relation_basis)

    def free_indices(self):
        """Ray indices outside every nef-partition subset."""
        used = {i for part in self.nef_partition for i in part}
        return [i for i in range(self.num_rays) if i not in used]

    def pairings(self, gamma):
        """Divisor pairings D_i . beta of the class with basis coordinates gamma."""
        m = self.num_rays
        return tuple(
            sum(int(gamma[r]) * self.relation_basis[r][i] for r in range(self.picard_rank))
            for i in range(m)
        )

    def degree(self, pairings):
        nef = [sum(pairings[i] for i in part) for part in self.nef_partition]
        return sum(pairings) - sum(nef)

    def to_json(self):
        data = {
            "rays": [list(r) for r in self.rays],
            "nef_partition": [list(p) for p in self.nef_partition],
        }
        if self.divisor_of_interest is not None:
            data["divisor_of_interest"] = list(self.divisor_of_interest)
        return json.dumps(data, indent=2)

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        try:
            return cls(
                rays=tuple(tuple(r) for r in data["rays"]),
                nef_partition=tuple(tuple(p) for p in data.get("nef_partition", [])),
                divisor_of_interest=tuple(data["divisor_of_interest"])
                if "divisor_of_interest" in data
                else None,
            )
        except KeyError as exc:
            raise InvalidParameters(f"toric data JSON missing field {exc}") from exc


@dataclass(frozen=True)
class CurveClass:
    gamma: tuple
    pairings: tuple
    degree: int
    nef_pairings: tuple

    def pair(self, functional):
        return dot(functional, self.pairings)


def _gamma_rows(data):
    """Constraint rows in basis coordinates: one per divisor pairing."""
    rho = data.picard_rank
    cols = []
    for i in range(data.num_rays):
        cols.append(tuple(data.relation_basis[r][i] for r in range(rho)))
    return cols


def _degree_row(data, cols):
    free = data.free_indices()
    rho = data.picard_rank
    return tuple(sum(cols[i][r] for i in free) for r in range(rho))


def check_bounded(data):
    """Raise UnboundedSlice when a nonzero effective degree-zero class exists."""
    rho = data.picard_rank
    if rho == 0:
        return
    cols = _gamma_rows(data)
    deg = _degree_row(data, cols)
    total = tuple(sum(c[r] for c in cols) for r in range(rho))
    rows = [(list(c), 0, False) for c in cols]
    for part in data.nef_partition:
        nef_row = tuple(sum(cols[i][r] for i in part) for r in range(rho))
        rows.append((list(nef_row), 0, False))
    rows.append((list(deg), 0, False))
    rows.append(([-x for x in deg], 0, False))
    rows.append((list(total), 1, False))
    witness = fm_feasible(rows, rho)
    if witness is not None:
        gamma = clear_denominators(witness)
        beta = data.pairings(gamma)
        raise UnboundedSlice(
            f"degree-zero class with nonnegative pairings exists: beta={beta}",
            witness=beta,
        )


def enumerate_classes(data, d):
    """All effective classes of anticanonical degree d, exactly.

    Effective here means every divisor pairing and every nef-partition
    pairing is nonnegative. The degree-d slice is listed through the
    exact bounding box of its vertex set.
    """
    if d < 0:
        raise InvalidParameters("degree must be nonnegative")
    check_bounded(data)
    rho = data.picard_rank
    if rho == 0:
        return [] if d > 0 else [CurveClass((), (0,) * data.num_rays, 0, (0,) * len(data.nef_partition))]
    cols = _gamma_rows(data)
    deg = _degree_row(data, cols)
    rows = [(list(map(Fraction, c)), Fraction(0)) for c in cols]
    rows.append((list(map(Fraction, deg)), Fraction(d)))
    rows.append(([-Fraction(x) for x in deg], Fraction(-d)))
    verts = polytope_vertices(rows, rho)
    if not verts:
        return []
    lo = [min(v[r] for v in verts) for r in range(rho)]
    hi = [max(v[r] for v in verts) for r in range(rho)]
    out = []
    from itertools import product
    from math import ceil, floor

    ranges = [range(ceil(lo[r]), floor(hi[r]) + 1) for r in range(rho)]
    for gamma in product(*ranges):
        pairings = data.pairings(gamma)
        if any(p < 0 for p in pairings):
            continue
        nef = tuple(sum(pairings[i] for i in part) for part in data.nef_partition)
        if any(p < 0 for p in nef):
            continue
        if sum(pairings) - sum(nef) != d:
            continue
        out.append(CurveClass(tuple(gamma), pairings, d, nef))
    out.sort(key=lambda c: c.gamma)
    return out


def _term(cls):
    num = factorial(cls.degree)
    for p in cls.nef_pairings:
        num *= factorial(p)
    den = 1
    for p in cls.pairings:
        den *= factorial(p)
    return Fraction(num, den)


def regularized_coefficient(data, d):
    """Degree-d coefficient of the regularized quantum period, exact."""
    if d == 0:
        check_bounded(data)
        return Fraction(1)
    return sum((_term(c) for c in enumerate_classes(data, d)), Fraction(0))


def restricted_coefficient(data, divisor, d, param="s"):
    """Divisor-marked coefficient: each class weighted by param^(E . beta).

    Setting the parameter to 1 recovers regularized_coefficient; setting
    it to 0 keeps only classes with vanishing pairing, which is the
    infinite-scaling limit along the divisor direction. A negative
    pairing is an error: it means the functional is not effective on the
    enumerated classes.
    """
    divisor = tuple(int(x) for x in divisor)
    if len(divisor) != data.num_rays:
        raise InvalidParameters("divisor functional must have one coefficient per ray")
    params = (param,)
    if d == 0:
        check_bounded(data)
        return ParamPoly.const(params, 1)
    terms = {}
    for cls in enumerate_classes(data, d):
        e = cls.pair(divisor)
        if e < 0:
            raise NegativePairing(
                f"divisor pairs negatively ({e}) with class beta={cls.pairings}"
            )
        key = (e,)
        terms[key] = terms.get(key, Fraction(0)) + _term(cls)
    return ParamPoly(params, terms)
