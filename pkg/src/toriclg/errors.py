"""Exception types shared across the toolkit.

Every operation that rejects its input raises one of these, so callers
(and the CLI) can distinguish bad input (exit code 2) from a failed
verification (exit code 1).
"""


class ToricLGError(Exception):
    """Base class for all toolkit errors."""


class DegenerateInput(ToricLGError):
    """Zero vector, empty data, or rays that do not span the space."""


class NotSimplicial(ToricLGError):
    """Operation requires a simplicial (and usually full-dimensional) cone."""


class NotInterior(ToricLGError):
    """Subdivision ray does not lie in the relative interior of the cone."""


class NonPrimitiveRay(ToricLGError):
    """A ray vector whose coordinates have a common factor."""


class DimMismatch(ToricLGError):
    """Vectors or cones of different ambient dimension were mixed."""


class IdentityElement(ToricLGError):
    """Age was requested for the identity group element."""


class NonSmallGroup(ToricLGError):
    """The quotient presentation contains a quasi-reflection."""


class InvalidParameters(ToricLGError):
    """Numeric parameters violate a gcd or range condition."""


class IncompleteSpec(ToricLGError):
    """A contraction spec is missing a parameter required by its kind."""


class UnsupportedKind(ToricLGError):
    """Contraction kind or center type outside the supported families."""


class ParseError(ToricLGError):
    """Text input is not a valid Laurent polynomial or quotient."""


class UnknownParam(ToricLGError):
    """Substitution mentions a parameter the polynomial does not carry."""


class InvalidMatrix(ToricLGError):
    """Exponent substitution matrix is not unimodular."""


class UnboundedSlice(ToricLGError):
    """Curve-class slice at fixed degree is unbounded.

    Carries an integer witness class with all pairings nonnegative and
    degree zero.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NegativePairing(ToricLGError):
    """A restricted-period divisor pairs negatively with an enumerated class."""


class InvalidFixture(ToricLGError):
    """Contraction fixture violates its fan-refinement invariant."""
