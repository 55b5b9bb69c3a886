"""Rational nilpotent Lie algebras: structure, automorphisms, gradings."""

from .algebra import (
    LieAlgebra,
    SeriesChain,
    ValidationReport,
    abelian_algebra,
    abelian_factor_dim,
    center,
    combine_automorphisms,
    derived,
    direct_sum,
    heisenberg,
    is_anosov,
    is_automorphism,
    is_expanding,
    lower_central_series,
    split_abelian_factor,
    validate,
)
from .grading import (
    FarkasProof,
    FeasibilityCertificate,
    GradingAssignment,
    check_grading,
    diagonal_grading_feasible,
    gamma_adapted_basis,
    verify_farkas,
)

__all__ = [
    "LieAlgebra",
    "SeriesChain",
    "ValidationReport",
    "abelian_algebra",
    "abelian_factor_dim",
    "center",
    "combine_automorphisms",
    "derived",
    "direct_sum",
    "heisenberg",
    "is_anosov",
    "is_automorphism",
    "is_expanding",
    "lower_central_series",
    "split_abelian_factor",
    "validate",
    "FarkasProof",
    "FeasibilityCertificate",
    "GradingAssignment",
    "check_grading",
    "diagonal_grading_feasible",
    "gamma_adapted_basis",
    "verify_farkas",
]
