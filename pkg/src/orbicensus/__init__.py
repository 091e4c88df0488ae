"""Exact classification of finite-abelian orbifold structures on projective space.

Everything is integer or Fraction arithmetic; no floating point anywhere.
The census tables for dimensions 1 to 3 ship as bundled reference data and
every computed value is audited against them.
"""

from .abelian import (
    GroupStructure,
    QuotientSpec,
    cokernel_structure,
    enumerate_enriques_quotients,
    local_germ_order,
    orb_group_order_formula,
    orb_group_structure,
    orb_relation_matrix,
    quotient_structure,
    quotient_uniformizes,
    smith_normal_form,
)
from .census import (
    BoundsCheck,
    CensusRow,
    CoveringEdge,
    SuborbifoldChoice,
    all_two_extension_orders,
    build_census,
    check_degree_bounds,
    cy_defect,
    diagonal_suborbifolds,
    enumerate_cy,
    family_dimension,
    is_calabi_yau,
    lift,
    lift_components,
    verify_cover,
)
from .errors import (
    ConservationViolationError,
    DimensionOneError,
    EmptyLiftError,
    InfiniteMultiplicityError,
    InfiniteQuotientError,
    NonIntegerResultError,
    NonlinearLocusError,
    NotUniformizableError,
    OrbifoldError,
    SignatureSyntaxError,
    SubsetTooLargeError,
)
from .euler import (
    e_complement,
    e_complement_recursive,
    e_orb_formula,
    e_orb_stratified,
    e_universal,
    generalized_binomial,
)
from .fixtures import (
    completion_signature,
    dim1_finite_signatures,
    dim1_infinite_signatures,
)
from .golden import (
    KNOWN_ERRATA,
    ErrataEntry,
    ErrataReport,
    check_higher_table,
    compare_to_golden,
    load_golden,
)
from .signatures import (
    INFINITY,
    LocusComponent,
    OrbifoldSignature,
    census_sort_key,
    f_vector,
    parse_components,
    parse_signature,
    render_components,
    render_signature,
    stratum_b_value,
    total_degree,
)
from .uniformize import (
    factorization_certificate,
    failing_prime_power,
    is_uniformizable,
    is_uniformizable_lcm,
    is_uniformizable_prime_power,
)

__version__ = "0.1.0"

__all__ = [
    "BoundsCheck",
    "CensusRow",
    "ConservationViolationError",
    "CoveringEdge",
    "DimensionOneError",
    "EmptyLiftError",
    "ErrataEntry",
    "ErrataReport",
    "GroupStructure",
    "INFINITY",
    "InfiniteMultiplicityError",
    "InfiniteQuotientError",
    "KNOWN_ERRATA",
    "LocusComponent",
    "NonIntegerResultError",
    "NonlinearLocusError",
    "NotUniformizableError",
    "OrbifoldError",
    "OrbifoldSignature",
    "QuotientSpec",
    "SignatureSyntaxError",
    "SubsetTooLargeError",
    "SuborbifoldChoice",
    "all_two_extension_orders",
    "build_census",
    "census_sort_key",
    "check_degree_bounds",
    "check_higher_table",
    "cokernel_structure",
    "compare_to_golden",
    "completion_signature",
    "cy_defect",
    "diagonal_suborbifolds",
    "dim1_finite_signatures",
    "dim1_infinite_signatures",
    "e_complement",
    "e_complement_recursive",
    "e_orb_formula",
    "e_orb_stratified",
    "e_universal",
    "enumerate_cy",
    "enumerate_enriques_quotients",
    "f_vector",
    "factorization_certificate",
    "failing_prime_power",
    "family_dimension",
    "generalized_binomial",
    "is_calabi_yau",
    "is_uniformizable",
    "is_uniformizable_lcm",
    "is_uniformizable_prime_power",
    "lift",
    "lift_components",
    "load_golden",
    "local_germ_order",
    "orb_group_order_formula",
    "orb_group_structure",
    "orb_relation_matrix",
    "parse_components",
    "parse_signature",
    "quotient_structure",
    "quotient_uniformizes",
    "render_components",
    "render_signature",
    "smith_normal_form",
    "stratum_b_value",
    "total_degree",
    "verify_cover",
    "__version__",
]
