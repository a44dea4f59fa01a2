"""Groupoid-graded rings, object crossed products, and separability certificates."""

from .fields import (
    ExtensionField,
    FieldHom,
    PrimeField,
    Rationals,
    poly,
    poly_irreducible,
    verify_field_hom,
)
from .groupoid import (
    FiniteGroupoid,
    disjoint_union,
    group_as_groupoid,
    pair_groupoid,
    restrict_to_objects,
    validate_groupoid,
)
from .algebra import (
    StructureConstantAlgebra,
    center,
    eval_poly_at,
    field_as_algebra,
    group_algebra,
    invert,
    is_simple,
    matrix_algebra,
    minimal_polynomial,
    two_sided_ideal,
    validate_algebra,
)
from .graded import (
    GradedAlgebra,
    SectionData,
    check_grading,
    is_object_crossed_product,
    is_strongly_graded,
    object_inverse,
    object_units,
    partial_identity,
    restrict_to_support,
    section_pairs_at,
    support_subgroupoid,
    verify_R0_projection,
)
from .crossed import (
    CrossedProductPresentation,
    CrossedSystem,
    build_crossed_product,
    coboundary_twist,
    extract_crossed_system,
    groupoid_ring,
    skew_system,
    twisted_system,
    validate_crossed_system,
)
from .separability import (
    SeparabilityReport,
    TensorElement,
    canonical_sections,
    casimir_construct,
    casimir_verify,
    central_in_R0,
    exhaustive_casimir_search,
    find_section,
    gamma,
    sections_for,
    separability_criterion,
    trace,
    trace_solution_from_casimir,
    w_sigma,
)
from .corpus import build_example, example_names
from .schema import SchemaError, canonical_json, dumps_definition, loads_definition
from .report import ValidationReport, StructureError

__version__ = "0.1.0"
