"""Exact polynomial arithmetic, Anosov predicates, certified root isolation."""

from .boxes import Box, Interval, eval_poly_box, eval_poly_interval
from .isolation import (
    PRECISION_CAP_BITS,
    CertifiedRoot,
    count_roots_by_modulus,
    isolate_roots,
)
from .poly import (
    CharPoly,
    FactorList,
    IntPolynomial,
    char_poly,
    composed_power,
    composed_product,
    count_real_roots,
    discriminant,
    factor_over_rationals,
    from_power_sums,
    irreducible_factors_are_anosov,
    is_anosov_polynomial,
    is_hyperbolic,
    is_integer_like,
    poly_gcd,
    power_sums,
    squarefree_part,
    sturm_count_open,
    sylvester_resultant,
    unit_circle_root_count,
)

__all__ = [
    "Box",
    "Interval",
    "eval_poly_box",
    "eval_poly_interval",
    "PRECISION_CAP_BITS",
    "CertifiedRoot",
    "count_roots_by_modulus",
    "isolate_roots",
    "CharPoly",
    "FactorList",
    "IntPolynomial",
    "char_poly",
    "composed_power",
    "composed_product",
    "count_real_roots",
    "discriminant",
    "factor_over_rationals",
    "from_power_sums",
    "irreducible_factors_are_anosov",
    "is_anosov_polynomial",
    "is_hyperbolic",
    "is_integer_like",
    "poly_gcd",
    "power_sums",
    "squarefree_part",
    "sturm_count_open",
    "sylvester_resultant",
    "unit_circle_root_count",
]
