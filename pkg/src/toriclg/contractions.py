"""Classified divisorial-contraction germs and their degeneration charts.

Each supported contraction is a weighted blow-up of an explicit local
model. Charts of the associated one-parameter degeneration family are
computed torically: build the ambient lattice (the product of the local
quotient with the family line), star-subdivide the positive orthant at
the stated weight vector, and read off the quotient group of every chart
cone. The residual hypersurface equations are carried along as
uninterpreted strings; analytic generality hypotheses are caller-asserted
flags, never parsed.
"""

import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import gcd

from .errors import (
    IncompleteSpec,
    InvalidParameters,
    NonPrimitiveRay,
    UnsupportedKind,
)
from .lattice import Cone
from .linalg import coords_in_basis, lattice_basis, vec_gcd
from .quotsing import (
    CyclicQuotient,
    HypersurfaceTerminalType,
    QuotientDecomposition,
    element_class_in_cone,
    quotient_from_cone,
)


class ContractionKind(Enum):
    SMOOTH_POINT = "SmoothPoint"
    QUOTIENT_POINT = "QuotientPoint"
    CA_N_POINT = "CAnPoint"
    CURVE_CASE_1 = "CurveCase1"
    CURVE_CASE_2 = "CurveCase2"
    CURVE_CASE_3 = "CurveCase3"
    CURVE_CASE_4 = "CurveCase4"

    @property
    def is_point_kind(self):
        return self in (
            ContractionKind.SMOOTH_POINT,
            ContractionKind.QUOTIENT_POINT,
            ContractionKind.CA_N_POINT,
        )


REQUIRED_PARAMS = {
    ContractionKind.SMOOTH_POINT: ("a", "b"),
    ContractionKind.QUOTIENT_POINT: ("n", "s"),
    ContractionKind.CA_N_POINT: ("n", "b", "w1", "w2", "a"),
    ContractionKind.CURVE_CASE_1: ("m",),
    ContractionKind.CURVE_CASE_2: ("m_prime", "k"),
    ContractionKind.CURVE_CASE_3: ("m", "r", "alpha"),
    ContractionKind.CURVE_CASE_4: ("m_prime", "k", "r", "alpha"),
}

ASSUMABLE_FLAGS = ("g_weighted_order_ok", "g_leading_monomial_present")

# center singularity types each kind can sit over
_ALLOWED_CENTERS = {
    ContractionKind.CA_N_POINT: {HypersurfaceTerminalType.CA_N},
    ContractionKind.CURVE_CASE_1: {HypersurfaceTerminalType.CA_N},
    ContractionKind.CURVE_CASE_2: {HypersurfaceTerminalType.CA_N},
    ContractionKind.CURVE_CASE_3: {HypersurfaceTerminalType.CA_N},
    ContractionKind.CURVE_CASE_4: {HypersurfaceTerminalType.CA_N},
}


@dataclass(frozen=True)
class ContractionSpec:
    kind: ContractionKind
    params: dict
    assume: frozenset = frozenset()
    center_type: HypersurfaceTerminalType | None = None

    def param(self, name):
        try:
            return int(self.params[name])
        except KeyError:
            raise IncompleteSpec(f"{self.kind.value} spec is missing parameter {name!r}") from None

    def to_json(self):
        data = {"kind": self.kind.value, "params": dict(self.params)}
        if self.assume:
            data["assume"] = sorted(self.assume)
        if self.center_type is not None:
            data["center_type"] = self.center_type.value
        return json.dumps(data, indent=2)

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        try:
            kind = ContractionKind(data["kind"])
        except (KeyError, ValueError):
            raise UnsupportedKind(f"unknown contraction kind {data.get('kind')!r}") from None
        center = None
        if "center_type" in data:
            try:
                center = HypersurfaceTerminalType(data["center_type"])
            except ValueError:
                raise UnsupportedKind(f"unknown center type {data['center_type']!r}") from None
        return cls(
            kind=kind,
            params={k: int(v) for k, v in data.get("params", {}).items()},
            assume=frozenset(data.get("assume", [])),
            center_type=center,
        )


class CentralFibreShape(Enum):
    TRANSVERSAL_BINOMIAL = "transversal-binomial"
    IRREDUCIBLE = "irreducible"
    MISSES_ORIGIN = "misses-origin"


@dataclass(frozen=True)
class ChartReport:
    """One affine chart of the degeneration family's ambient blow-up."""

    chart: str
    ambient_dim: int
    quotient: QuotientDecomposition
    presentation: CyclicQuotient | None  # single-generator form, ambient coordinate order
    shape: CentralFibreShape
    binomial_pair: tuple | None = None
    hypersurface_note: str | None = None

    def __post_init__(self):
        if self.shape is CentralFibreShape.TRANSVERSAL_BINOMIAL and not self.binomial_pair:
            raise InvalidParameters("transversal charts must name the two cutting coordinates")

    def describe(self):
        quot = "smooth" if self.presentation is None else str(self.presentation)
        extra = ""
        if self.binomial_pair:
            extra = f" fibre ({self.binomial_pair[0]}*{self.binomial_pair[1]}=0)"
        note = f" | {self.hypersurface_note}" if self.hypersurface_note else ""
        return f"{self.chart}-chart: A^{self.ambient_dim}/{quot} [{self.shape.value}]{extra}{note}"


@dataclass
class ConditionReport:
    """Per-condition outcomes: pass / fail / assumed / missing."""

    kind: ContractionKind
    conditions: list = field(default_factory=list)

    def add(self, name, status, detail=""):
        self.conditions.append((name, status, detail))

    @property
    def ok(self):
        return all(status in ("pass", "assumed") for _, status, _ in self.conditions)

    def __str__(self):
        lines = [f"{self.kind.value}: {'valid' if self.ok else 'INVALID'}"]
        for name, status, detail in self.conditions:
            suffix = f" ({detail})" if detail else ""
            lines.append(f"  [{status:>7}] {name}{suffix}")
        return "\n".join(lines)


def _check_center(spec):
    if spec.center_type is None:
        return
    allowed = _ALLOWED_CENTERS.get(spec.kind, set())
    if spec.center_type not in allowed:
        raise UnsupportedKind(
            f"center type {spec.center_type.value} is outside the ordinary families this "
            f"classification covers (kind {spec.kind.value})"
        )


def validate_contraction(spec):
    """Check the numeric conditions of the classified weight families.

    Analytic hypotheses on the defining polynomial are taken from
    spec.assume and reported as assumed (or missing); they are never
    verified symbolically.
    """
    report = ConditionReport(kind=spec.kind)
    _check_center(spec)
    k = spec.kind
    if k is ContractionKind.SMOOTH_POINT:
        a, b = spec.param("a"), spec.param("b")
        report.add("a, b positive", "pass" if a >= 1 and b >= 1 else "fail", f"a={a}, b={b}")
        report.add("coprime positive integers", "pass" if gcd(a, b) == 1 else "fail", f"gcd={gcd(a, b)}")
    elif k is ContractionKind.QUOTIENT_POINT:
        n, s = spec.param("n"), spec.param("s")
        report.add("0 < s < n", "pass" if 0 < s < n else "fail", f"n={n}, s={s}")
        report.add("gcd(s, n) = 1", "pass" if gcd(s, n) == 1 else "fail", f"gcd={gcd(s, n)}")
    elif k is ContractionKind.CA_N_POINT:
        n, b = spec.param("n"), spec.param("b")
        w1, w2, a = spec.param("w1"), spec.param("w2"), spec.param("a")
        report.add("n >= 2, weights positive", "pass" if n >= 2 and min(w1, w2, a) >= 1 else "fail")
        report.add("gcd(b, n) = 1", "pass" if gcd(b, n) == 1 else "fail")
        c1 = (a - b * w1) % n == 0 and (w1 + w2) % (a * n) == 0
        report.add(
            "a = b*w1 mod n and w1+w2 = 0 mod a*n",
            "pass" if c1 else "fail",
            f"a-b*w1={a - b * w1}, w1+w2={w1 + w2}",
        )
        if (a - b * w1) % n == 0:
            c2 = gcd((a - b * w1) // n, w1) == 1
            report.add("(a - b*w1)/n coprime to w1", "pass" if c2 else "fail")
        else:
            report.add("(a - b*w1)/n coprime to w1", "fail", "not an integer")
        report.add(
            "g has the stated weighted order",
            "assumed" if "g_weighted_order_ok" in spec.assume else "missing",
        )
        report.add(
            "leading z-power appears in g",
            "assumed" if "g_leading_monomial_present" in spec.assume else "missing",
        )
    elif k is ContractionKind.CURVE_CASE_1:
        m = spec.param("m")
        report.add("m >= 1", "pass" if m >= 1 else "fail", f"m={m}")
        report.add(
            "defining polynomial general of weighted order m",
            "assumed" if "g_weighted_order_ok" in spec.assume else "missing",
        )
    elif k is ContractionKind.CURVE_CASE_2:
        mp, kk = spec.param("m_prime"), spec.param("k")
        report.add("m' >= 2", "pass" if mp >= 2 else "fail", f"m'={mp}")
        report.add("k >= 2", "pass" if kk >= 2 else "fail", f"k={kk}")
        report.add(
            "defining polynomial general of weighted order m'",
            "assumed" if "g_weighted_order_ok" in spec.assume else "missing",
        )
    elif k is ContractionKind.CURVE_CASE_3:
        m, r, alpha = spec.param("m"), spec.param("r"), spec.param("alpha")
        report.add("m >= 1, r >= 2", "pass" if m >= 1 and r >= 2 else "fail")
        report.add("gcd(alpha, r) = 1", "pass" if gcd(alpha, r) == 1 else "fail")
        report.add(
            "defining polynomial general of weighted order m",
            "assumed" if "g_weighted_order_ok" in spec.assume else "missing",
        )
        # the two stated ambient presentations agree as residue tuples;
        # alpha plays the quotient-weight role in both
        report.add(
            "ambient aliasing",
            "pass",
            "1/r(r-1,1,alpha,r) = 1/r(-1,1,alpha,0) as residues",
        )
    elif k is ContractionKind.CURVE_CASE_4:
        mp, kk = spec.param("m_prime"), spec.param("k")
        r, alpha = spec.param("r"), spec.param("alpha")
        report.add("m' >= 2, k >= 2, r >= 2", "pass" if mp >= 2 and kk >= 2 and r >= 2 else "fail")
        report.add("gcd(alpha, r) = 1", "pass" if gcd(alpha, r) == 1 else "fail")
        report.add(
            "alpha = k mod r",
            "pass" if (alpha - kk) % r == 0 else "fail",
            "coordinate-change equation must be group-invariant",
        )
        report.add(
            "defining polynomial general of weighted order m'",
            "assumed" if "g_weighted_order_ok" in spec.assume else "missing",
        )
    return report


def _chart_data(spec):
    """(coords, ambient generator or None, order, weight, charts).

    `charts` maps chart coordinate -> (shape, binomial pair, note). The
    weight is the exact (possibly fractional) blow-up weight vector: the
    point kinds blow up at 1/n-weights, the curve kinds at integral ones.
    """
    k = spec.kind
    T = CentralFibreShape.TRANSVERSAL_BINOMIAL
    I = CentralFibreShape.IRREDUCIBLE
    M = CentralFibreShape.MISSES_ORIGIN
    if k is ContractionKind.SMOOTH_POINT:
        a, b = spec.param("a"), spec.param("b")
        return (
            ("x", "y", "z", "t"),
            None,
            1,
            [Fraction(w) for w in (1, a, b, 1)],
            {
                "x": (T, ("x", "t"), None),
                "y": (T, ("y", "t"), None),
                "z": (T, ("z", "t"), None),
                "t": (I, None, None),
            },
        )
    if k is ContractionKind.QUOTIENT_POINT:
        n, s = spec.param("n"), spec.param("s")
        return (
            ("x", "y", "z", "t"),
            (s, -s, 1, 0),
            n,
            [Fraction(w, n) for w in (s, n - s, 1, n)],
            {
                "x": (T, ("x", "t"), None),
                "y": (T, ("y", "t"), None),
                "z": (T, ("z", "t"), None),
                "t": (I, None, None),
            },
        )
    if k is ContractionKind.CA_N_POINT:
        n, b = spec.param("n"), spec.param("b")
        w1, w2, a = spec.param("w1"), spec.param("w2"), spec.param("a")
        q = (w1 + w2) // n
        return (
            ("x", "y", "z", "w", "t"),
            (1, -1, b, 0, 0),
            n,
            [Fraction(w, n) for w in (w1, w2, a, n, n)],
            {
                "x": (T, ("x", "t"), f"y + g(z^{n}*x^{a}, w*x)/x^{q} + t^{q} = 0"),
                "y": (T, ("y", "t"), f"x + g(z^{n}*y^{a}, w*y)/y^{q} + t^{q} = 0"),
                "z": (M, None, None),
                "w": (M, None, None),
                "t": (I, None, None),
            },
        )
    if k is ContractionKind.CURVE_CASE_1:
        m = spec.param("m")
        return (
            ("x", "y", "z", "w", "t"),
            None,
            1,
            [Fraction(w) for w in (0, m, 1, 1, 1)],
            {
                "y": (T, ("y", "t"), f"x + h+(x, y^{m}, y*z, y*w) + g(x, y*z, y*w)/y^{m} + t^{m} = 0"),
                "z": (M, None, None),
                "w": (M, None, None),
                "t": (I, None, None),
            },
        )
    if k is ContractionKind.CURVE_CASE_2:
        mp, kk = spec.param("m_prime"), spec.param("k")
        note = (
            f"x + h+(x, y*u^{mp - 1}, z*u, w*u)/u^{mp} + g(x, z*u, w*u)/u^{mp} + t^{mp} = 0; "
            f"u^{mp - 1} - (x^{kk - 1}*y*u^{mp - 2} + z) = 0"
        )
        return (
            ("x", "y", "z", "w", "u", "t"),
            None,
            1,
            [Fraction(w) for w in (0, mp - 1, 1, 1, mp, 1)],
            {
                "y": (M, None, None),
                "z": (M, None, None),
                "w": (M, None, None),
                "u": (T, ("u", "t"), note),
                "t": (I, None, None),
            },
        )
    if k is ContractionKind.CURVE_CASE_3:
        m, r, alpha = spec.param("m"), spec.param("r"), spec.param("alpha")
        return (
            ("x", "y", "z", "w", "t"),
            (-1, 1, alpha, 0, 0),
            r,
            [Fraction(w) for w in (0, m, 1, 1, 1)],
            {
                "y": (T, ("y", "t"), f"x + h+(x, y^{m}, y*z, y*w) + g(x, y*z, y*w)/y^{m} + t^{m} = 0"),
                "z": (M, None, None),
                "w": (M, None, None),
                "t": (I, None, None),
            },
        )
    if k is ContractionKind.CURVE_CASE_4:
        mp, kk = spec.param("m_prime"), spec.param("k")
        r, alpha = spec.param("r"), spec.param("alpha")
        note = (
            f"x + h+(x, y*u, z*u, w*u)/u^{mp} + g(x, z*u, w*u)/u^{mp} + t^{mp} = 0; "
            f"u^{mp - 1} - (x^{kk - 1}*y + z) = 0"
        )
        return (
            ("x", "y", "z", "w", "u", "t"),
            (-1, alpha, 1, 0, 1, 0),
            r,
            [Fraction(w) for w in (0, 1, 1, 1, mp, 1)],
            {
                "y": (M, None, None),
                "z": (M, None, None),
                "w": (M, None, None),
                "u": (T, ("u", "t"), note),
                "t": (I, None, None),
            },
        )
    raise UnsupportedKind(f"no chart construction for kind {spec.kind!r}")


def _ambient_basis(dim, ambient_gen, order):
    rows = [[Fraction(int(i == j)) for j in range(dim)] for i in range(dim)]
    if ambient_gen is not None:
        rows.append([Fraction(g, order) for g in ambient_gen])
    return lattice_basis(rows)


def _to_lattice_coords(basis, vec):
    coords = coords_in_basis(basis, [Fraction(x) for x in vec])
    if coords is None or any(c.denominator != 1 for c in coords):
        raise InvalidParameters(f"{vec} is not a point of the ambient lattice")
    return [int(c) for c in coords]


def build_degeneration_charts(spec):
    """Chart reports of the family blow-up, exactly one per chart.

    Quotients are derived from first principles: the ambient lattice of
    the local model times the family line, star-subdivided at the stated
    weight vector, with Smith normal form extracting each chart group.
    The single-generator presentation follows the conventional choice for
    each family (the blown-down coordinate's class for point kinds, the
    ambient quotient generator for quotiented curve kinds).
    """
    _check_center(spec)
    coords, ambient_gen, order, weight, charts = _chart_data(spec)
    dim = len(coords)
    basis = _ambient_basis(dim, ambient_gen, order)
    v_coords = _to_lattice_coords(basis, weight)
    if vec_gcd(v_coords) != 1:
        raise NonPrimitiveRay(f"blow-up weight {tuple(weight)} is not primitive in the ambient lattice")

    reports = []
    for i, name in enumerate(coords):
        if name not in charts:
            continue
        shape, pair, note = charts[name]
        gens = []
        for j in range(dim):
            if j == i:
                gens.append(v_coords)
            else:
                gens.append(_to_lattice_coords(basis, [Fraction(int(jj == j)) for jj in range(dim)]))
        cone = Cone(gens)
        dec = quotient_from_cone(cone)
        presentation = None
        if not dec.is_trivial:
            blown_down = [-Fraction(int(jj == i)) for jj in range(dim)]
            use_ambient_generator = not spec.kind.is_point_kind and ambient_gen is not None
            probes = [blown_down]
            if use_ambient_generator:
                probes.insert(0, [Fraction(g, order) for g in ambient_gen])
            for probe in probes:
                cls_order, cls_weights = element_class_in_cone(cone, _to_lattice_coords(basis, probe))
                if cls_order == dec.total_order:
                    presentation = CyclicQuotient(cls_order, cls_weights)
                    break
        reports.append(
            ChartReport(
                chart=name,
                ambient_dim=dim,
                quotient=dec,
                presentation=presentation,
                shape=shape,
                binomial_pair=pair,
                hypersurface_note=note,
            )
        )
    return reports


def exceptional_ray(spec):
    """Primitive insertion ray of the blow-up in the (3-fold) ambient lattice.

    Only the toric-realizable point kinds carry one. For a quotient point
    the ray is expressed in a canonical basis of the quotient lattice.
    """
    if spec.kind is ContractionKind.SMOOTH_POINT:
        return (1, spec.param("a"), spec.param("b"))
    if spec.kind is ContractionKind.QUOTIENT_POINT:
        n, s = spec.param("n"), spec.param("s")
        basis = _ambient_basis(3, (s, -s, 1), n)
        ray = _to_lattice_coords(basis, [Fraction(s, n), Fraction(n - s, n), Fraction(1, n)])
        if vec_gcd(ray) != 1:
            raise NonPrimitiveRay("blow-up ray is not primitive in the quotient lattice")
        return tuple(ray)
    raise UnsupportedKind(f"{spec.kind.value} has no single toric exceptional ray")
