"""Family construction, quadratic descent, and feasibility verdicts."""

from .descent import (
    DescentInput,
    QuadraticMatrix,
    fixed_form_basis,
    galois_descent_quadratic,
    validate_descent_input,
)
from .family import (
    GRADING_REDUCTION_NOTE,
    FamilyParams,
    FamilyReport,
    build_base_algebra,
    build_family_member,
    extend_family,
    family_automorphism,
    family_descent_input,
    family_rho_tau,
    fundamental_unit,
    same_family_field,
    verify_family_member,
)
from .verdicts import (
    LATTICE_HEURISTIC_NOTE,
    SEMISIMPLE_REALIZATION_NOTE,
    TYPE_62_CLASSIFICATION_NOTE,
    TYPE_CONSTRAINT_NOTE,
    VERDICT_STATUSES,
    Verdict,
    grading_from_dA,
    invariant_refinement,
    restricted_matrix,
    type_feasibility_verdict,
)

__all__ = [
    "DescentInput",
    "QuadraticMatrix",
    "fixed_form_basis",
    "galois_descent_quadratic",
    "validate_descent_input",
    "GRADING_REDUCTION_NOTE",
    "FamilyParams",
    "FamilyReport",
    "build_base_algebra",
    "build_family_member",
    "extend_family",
    "family_automorphism",
    "family_descent_input",
    "family_rho_tau",
    "fundamental_unit",
    "same_family_field",
    "verify_family_member",
    "LATTICE_HEURISTIC_NOTE",
    "SEMISIMPLE_REALIZATION_NOTE",
    "TYPE_62_CLASSIFICATION_NOTE",
    "TYPE_CONSTRAINT_NOTE",
    "VERDICT_STATUSES",
    "Verdict",
    "grading_from_dA",
    "invariant_refinement",
    "restricted_matrix",
    "type_feasibility_verdict",
]
