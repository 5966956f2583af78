"""Cyclic quotient singularities and their classification.

A quotient 1/n(a_1,...,a_k) is the quotient of affine k-space by the
cyclic group of order n acting diagonally with the given residue weights.
Classification runs the age test exhaustively over all nontrivial group
elements, which covers every primitive root-of-unity choice: the elements
g^u with u coprime to ord(g) are themselves group elements.
"""

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import reduce
from itertools import product
from math import gcd, lcm

from .errors import (
    IdentityElement,
    InvalidParameters,
    NonSmallGroup,
    NotSimplicial,
    ParseError,
)
from .lattice import cone_index
from .linalg import invert_unimodular, smith_decomposition, solve, transpose


class HypersurfaceTerminalType(Enum):
    """Type tags of the index >= 2 hypersurface terminal families.

    Metadata only: the toolkit never verifies the defining-equation
    conditions behind these tags.
    """

    CA_N = "cA/n"
    CAX_4 = "cAx/4"
    CAX_2 = "cAx/2"
    CD_3_1 = "cD/3-1"
    CD_3_2 = "cD/3-2"
    CD_3_3 = "cD/3-3"
    CD_2_1 = "cD/2-1"
    CD_2_2 = "cD/2-2"
    CE_2 = "cE/2"

    @property
    def is_ordinary(self):
        return self is not HypersurfaceTerminalType.CAX_4


@dataclass(frozen=True)
class CyclicQuotient:
    """1/n(a_1,...,a_k) with residues reduced mod n, coordinate order kept."""

    order: int
    weights: tuple

    def __post_init__(self):
        if self.order < 1:
            raise InvalidParameters("quotient order must be positive")
        object.__setattr__(self, "weights", tuple(w % self.order for w in self.weights))

    @property
    def k(self):
        return len(self.weights)

    @property
    def is_trivial(self):
        return self.order == 1

    @property
    def normal_form(self):
        """Weights sorted ascending; the chart-reporting path keeps order."""
        return CyclicQuotient(self.order, tuple(sorted(self.weights)))

    def is_faithful(self):
        return self.order == 1 or gcd(self.order, *self.weights) == 1

    def __str__(self):
        return f"1/{self.order}({','.join(str(w) for w in self.weights)})"

    @classmethod
    def parse(cls, text):
        m = re.fullmatch(r"\s*1\s*/\s*(\d+)\s*\(\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*\)\s*", text)
        if not m:
            raise ParseError(f"cannot parse quotient {text!r}; expected 1/n(a1,...,ak)")
        n = int(m.group(1))
        weights = tuple(int(x) for x in m.group(2).split(","))
        return cls(n, weights)


@dataclass(frozen=True)
class QuotientDecomposition:
    """Product of cyclic quotients acting diagonally on shared coordinates."""

    factors: tuple

    def __post_init__(self):
        ks = {f.k for f in self.factors}
        if len(ks) > 1:
            raise InvalidParameters("decomposition factors must share coordinate count")

    @property
    def total_order(self):
        return reduce(lambda a, b: a * b, (f.order for f in self.factors), 1)

    @property
    def k(self):
        return self.factors[0].k if self.factors else 0

    @property
    def is_trivial(self):
        return all(f.is_trivial for f in self.factors)

    def elements(self):
        """Yield the eigenvalue-exponent rows b_i in [0,1) of every nontrivial element."""
        ranges = [range(f.order) for f in self.factors]
        for js in product(*ranges):
            if all(j == 0 for j in js):
                continue
            yield tuple(
                sum(
                    Fraction(j * f.weights[i], f.order)
                    for j, f in zip(js, self.factors)
                )
                % 1
                for i in range(self.k)
            )

    def __str__(self):
        if self.is_trivial:
            return "smooth"
        return " x ".join(str(f) for f in self.factors if not f.is_trivial)


@dataclass(frozen=True)
class SingularityClass:
    is_smooth: bool
    is_terminal: bool
    is_canonical: bool
    is_gorenstein: bool
    min_age: Fraction | None

    def __str__(self):
        if self.is_smooth:
            return "smooth"
        tags = []
        tags.append("terminal" if self.is_terminal else ("canonical" if self.is_canonical else "not canonical"))
        tags.append("Gorenstein" if self.is_gorenstein else "non-Gorenstein")
        return f"{', '.join(tags)} (min age {self.min_age})"


def age(q, j, u=1):
    """Age of the element g^(u*j) of 1/n(a_1,...,a_k), an exact rational.

    j picks the group element, u a primitive root choice coprime to the
    element order. Equals sum_i frac(u*j*a_i/n).
    """
    n = q.order
    if j % n == 0:
        raise IdentityElement("age is defined for nontrivial elements only")
    m = n // gcd(n, j % n)
    if gcd(u, m) != 1:
        raise InvalidParameters(f"root exponent {u} not coprime to element order {m}")
    return sum(Fraction((u * j * a) % n, n) for a in q.weights)


def _as_decomposition(d):
    if isinstance(d, CyclicQuotient):
        return QuotientDecomposition(factors=() if d.is_trivial else (d,))
    if isinstance(d, QuotientDecomposition):
        return d
    raise TypeError(f"expected CyclicQuotient or QuotientDecomposition, got {type(d)!r}")


def classify(d):
    """Terminal / canonical / Gorenstein flags via the age criterion.

    Enumerates every nontrivial element of the (product) group. Raises
    NonSmallGroup when some element fixes a hyperplane (quasi-reflection):
    such a presentation is not a singularity presentation at all.
    """
    dec = _as_decomposition(d)
    if dec.is_trivial:
        return SingularityClass(True, True, True, True, None)
    k = dec.k
    min_age = None
    if len(dec.factors) == 1:
        # integer fast path for the common cyclic case
        n = dec.factors[0].order
        weights = dec.factors[0].weights
        best = None
        for j in range(1, n):
            residues = [(j * a) % n for a in weights]
            if sum(1 for r in residues if r == 0) >= k - 1:
                raise NonSmallGroup(
                    f"element {j} of 1/{n}{weights} is a quasi-reflection"
                )
            total = sum(residues)
            if best is None or total < best:
                best = total
        min_age = Fraction(best, n)
    else:
        for exponents in dec.elements():
            zeros = sum(1 for b in exponents if b == 0)
            if zeros >= k - 1:
                raise NonSmallGroup(
                    f"element with eigenvalue exponents {tuple(str(b) for b in exponents)} is a quasi-reflection"
                )
            a = sum(exponents)
            if min_age is None or a < min_age:
                min_age = a
    gorenstein = all(sum(f.weights) % f.order == 0 for f in dec.factors)
    return SingularityClass(
        is_smooth=False,
        is_terminal=min_age > 1,
        is_canonical=min_age >= 1,
        is_gorenstein=gorenstein,
        min_age=min_age,
    )


def quotient_from_cone(c):
    """Quotient group data of the affine chart of a simplicial cone.

    The ambient lattice modulo the sublattice the generators span, with
    each cyclic factor's action weights written in the chart coordinates
    (the dual basis of the generators). Weight order follows generator
    order.
    """
    if not (c.is_simplicial and c.is_full_dimensional):
        raise NotSimplicial("chart quotients need a simplicial full-dimensional cone")
    g = [list(row) for row in c.generators]
    snf = smith_decomposition(g)
    vinv = invert_unimodular([list(r) for r in snf.right])
    factors = []
    for i, dv in enumerate(snf.divisors):
        if dv <= 1:
            continue
        gen = vinv[i]
        coords = solve(transpose(g), gen)
        weights = []
        for cj in coords:
            scaled = cj * dv
            assert scaled.denominator == 1
            weights.append(int(scaled) % dv)
        factors.append(CyclicQuotient(dv, tuple(weights)))
    dec = QuotientDecomposition(tuple(factors))
    assert dec.total_order == cone_index(c)
    return dec


def element_class_in_cone(c, v):
    """Presentation (order, weights) of a lattice element's class mod the cone lattice.

    v is an ambient lattice point; the result describes its image in the
    chart quotient group as order d and action weights on the chart
    coordinates. Order 1 means v lies in the generator span.
    """
    if not (c.is_simplicial and c.is_full_dimensional):
        raise NotSimplicial("element classes need a simplicial full-dimensional cone")
    g = [list(row) for row in c.generators]
    coords = solve(transpose(g), list(v))
    order = reduce(lcm, (Fraction(x).denominator for x in coords), 1)
    weights = tuple(int(Fraction(x) * order) % order for x in coords)
    return order, weights


def kawamata_type(n, s):
    """The quotient 1/n(s, n-s, 1) of the unique extraction over it."""
    if n < 2 or not 0 < s < n or gcd(s, n) != 1:
        raise InvalidParameters(f"need 0 < s < n with gcd(s, n) = 1, got n={n}, s={s}")
    return CyclicQuotient(n, (s, n - s, 1))
