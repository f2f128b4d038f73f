"""Exact Groebner basis engine for bilinear systems over GF(p)."""

from .core_algebra import (
    DEFAULT_PRIME,
    AlgebraError,
    FlavorError,
    LayoutMismatch,
    Monomial,
    ParseError,
    Polynomial,
    PolySystem,
    PrimeField,
    VariableLayout,
    bihomogenize,
    dehomogenize,
    random_affine_system,
    random_system,
)
from .f5_engine import (
    GroebnerBasis,
    bl_criterion_table,
    buchberger,
    check_biregularity,
    matrix_f5,
    multihomogeneous_matrix_f5,
    normal_form,
    predicted_rtz_count,
)
from .hilbert_series import (
    BiSeries,
    hs_closed_form,
    hs_direct,
    hs_recurrence,
    hs_zero_ideal,
    speedup_factor,
)

__all__ = [
    "DEFAULT_PRIME",
    "AlgebraError",
    "FlavorError",
    "LayoutMismatch",
    "ParseError",
    "Monomial",
    "Polynomial",
    "PolySystem",
    "PrimeField",
    "VariableLayout",
    "bihomogenize",
    "dehomogenize",
    "random_affine_system",
    "random_system",
    "GroebnerBasis",
    "bl_criterion_table",
    "buchberger",
    "check_biregularity",
    "matrix_f5",
    "multihomogeneous_matrix_f5",
    "normal_form",
    "predicted_rtz_count",
    "BiSeries",
    "hs_closed_form",
    "hs_direct",
    "hs_recurrence",
    "hs_zero_ideal",
    "speedup_factor",
]

__version__ = "0.1.0"
