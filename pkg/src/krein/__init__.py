"""Riesz bases, Bessel bounds and Gram matrices over indefinite metrics.

The package models finite-dimensional spaces with a Hermitian invertible
metric, splits them into definite parts, and constructs, certifies and
cross-validates Riesz bases: operator images of the canonical basis, their
biorthogonal duals, reconstruction formulas, optimal frame-type bounds, and
two equivalent Gram-matrix characterizations.
"""

from .core import (
    FundamentalDecomposition,
    KreinMetric,
    equality_via_pairings,
    fundamental_decomposition,
    indefinite_inner,
    is_orthonormal_basis,
    j_norm,
)
from .errors import KreinError
from .family import (
    CoefficientSequence,
    Completeness,
    VectorFamily,
    analysis,
    completeness,
    split_indices,
    subspace_membership,
    synthesis,
)
from .generate import (
    DEFECTS,
    GenSpec,
    gen_defective_family,
    gen_metric,
    gen_operator_pair,
    gen_riesz_instance,
)
from .gram import (
    GramPair,
    absolute_sum_bessel_test,
    absolute_sum_bound,
    bessel_from_gram,
    gram_invertibility,
    gram_matrices,
)
from .numerics import (
    DEFAULT_TOLERANCES,
    Tolerances,
    hermitian_eig,
    invert,
    numeric_rank,
    singular_extremes,
)
from .riesz import (
    FailureReason,
    OperatorPair,
    RieszCertificate,
    RieszVerdict,
    biorthogonality_check,
    biorthogonality_residual,
    build_certificate,
    construct_riesz,
    dual_sequence,
    factor_riesz,
    frame_inequality_bounds,
    optimal_frame_bounds,
    reconstruct,
    riesz_via_gram,
    riesz_via_inequalities,
    span_operator,
)
from .rng import SplitMix64, derive_seed
from .verify import run_suite

__version__ = "0.1.0"

__all__ = [
    "CoefficientSequence",
    "Completeness",
    "DEFAULT_TOLERANCES",
    "DEFECTS",
    "FailureReason",
    "FundamentalDecomposition",
    "GenSpec",
    "GramPair",
    "KreinError",
    "KreinMetric",
    "OperatorPair",
    "RieszCertificate",
    "RieszVerdict",
    "SplitMix64",
    "Tolerances",
    "VectorFamily",
    "absolute_sum_bessel_test",
    "absolute_sum_bound",
    "analysis",
    "bessel_from_gram",
    "biorthogonality_check",
    "biorthogonality_residual",
    "build_certificate",
    "completeness",
    "construct_riesz",
    "derive_seed",
    "dual_sequence",
    "equality_via_pairings",
    "factor_riesz",
    "frame_inequality_bounds",
    "fundamental_decomposition",
    "gen_defective_family",
    "gen_metric",
    "gen_operator_pair",
    "gen_riesz_instance",
    "gram_invertibility",
    "gram_matrices",
    "hermitian_eig",
    "indefinite_inner",
    "invert",
    "is_orthonormal_basis",
    "j_norm",
    "numeric_rank",
    "optimal_frame_bounds",
    "reconstruct",
    "riesz_via_gram",
    "riesz_via_inequalities",
    "run_suite",
    "singular_extremes",
    "span_operator",
    "split_indices",
    "subspace_membership",
    "synthesis",
]
