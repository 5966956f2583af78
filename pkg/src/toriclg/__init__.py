"""Exact toric toolkit: weighted blow-ups, quotient singularities, and
Laurent/Givental quantum-period verification."""

from .contractions import (
    ContractionKind,
    ContractionSpec,
    build_degeneration_charts,
    exceptional_ray,
    validate_contraction,
)
from .iseries import (
    ToricCIData,
    enumerate_classes,
    regularized_coefficient,
    relation_lattice,
    restricted_coefficient,
)
from .lattice import (
    Cone,
    Fan,
    cone_index,
    fan_polytope,
    is_gorenstein_cone,
    is_smooth_cone,
    primitivize,
    smith_decomposition,
    star_subdivide,
    star_subdivision_pieces,
    validate_subdivision,
)
from .laurent import (
    LaurentPoly,
    ParamPoly,
    PeriodSeries,
    limit_drop,
    newton_polytope,
    parse,
    period_coefficients,
    serialize,
    substitute_params,
    unimodular_substitution,
)
from .quotsing import (
    CyclicQuotient,
    QuotientDecomposition,
    SingularityClass,
    age,
    classify,
    kawamata_type,
    quotient_from_cone,
)
from .verify import (
    ContractionFixture,
    VerificationReport,
    builtin_fixtures,
    fan_polynomial,
    run_example_40836,
    verify_toric_contraction,
)

__version__ = "0.1.0"
