"""Gram matrices of a family's index classes and the bounds they certify.

The plus Gram matrix has entry ``(i, j) = [f_i, f_j]`` over plus-class
indices, and analogously for the minus class (stored literally, not
negated). Spectral norms of the two blocks are the optimal Bessel bounds of
the halves; full numeric rank of the blocks is the invertibility half of the
Riesz criterion.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import NonSquare, NotHermitian
from .family import VectorFamily
from .numerics import (
    DEFAULT_TOLERANCES,
    Tolerances,
    hermitian_deviation,
    singular_extremes,
    spectral_norm,
)


@dataclass(frozen=True)
class GramPair:
    g_plus: np.ndarray
    g_minus: np.ndarray
    norm_plus: float
    norm_minus: float
    sigma_min_plus: float
    sigma_min_minus: float


def _extremes(a: np.ndarray) -> tuple[float, float]:
    if a.size == 0:
        return 0.0, 0.0
    return singular_extremes(a)


def gram_matrices(fam: VectorFamily) -> GramPair:
    """Pairwise products of each index class with itself."""
    g = fam.metric.G
    g_plus = kernels.pairwise_form(fam.plus_vectors, g)
    g_minus = kernels.pairwise_form(fam.minus_vectors, g)
    smin_p, smax_p = _extremes(g_plus)
    smin_m, smax_m = _extremes(g_minus)
    return GramPair(g_plus, g_minus, smax_p, smax_m, smin_p, smin_m)


def bessel_from_gram(gp: GramPair) -> tuple[float, float]:
    """Optimal Bessel bounds of the two halves (spectral norms of the blocks)."""
    return gp.norm_plus, gp.norm_minus


def absolute_sum_bound(m: np.ndarray, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Sum of entry moduli of a Hermitian matrix; dominates its spectral norm."""
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NonSquare(f"expected a square matrix, got shape {m.shape}")
    if m.size == 0:
        return 0.0
    scale = spectral_norm(m)
    if hermitian_deviation(m) > tol.sym_tol * max(scale, np.finfo(float).tiny):
        raise NotHermitian("absolute-sum bound requires a Hermitian matrix")
    total = float(np.abs(m).sum())
    if scale > total * (1.0 + 1e-12):
        raise ArithmeticError(
            f"spectral norm {scale:.17g} exceeded the absolute entry sum {total:.17g}"
        )
    return total


def absolute_sum_bessel_test(fam: VectorFamily) -> float:
    """Sum of ``|[f_j, f_n]|`` over all index pairs of the whole family.

    A finite value certifies the family as a Bessel sequence with this
    bound; it always dominates the Gram-derived bounds of cleanly split
    families.
    """
    prod = kernels.pairwise_form(fam.vectors, fam.metric.G)
    return float(np.abs(prod).sum())


def gram_invertibility(
    gp: GramPair, tol: Tolerances = DEFAULT_TOLERANCES
) -> tuple[bool, bool, tuple[float, float]]:
    """Full-numeric-rank test of both Gram blocks (empty blocks pass)."""
    inv_plus = gp.g_plus.size == 0 or gp.sigma_min_plus > tol.rank_tol * gp.norm_plus
    inv_minus = gp.g_minus.size == 0 or gp.sigma_min_minus > tol.rank_tol * gp.norm_minus
    return inv_plus, inv_minus, (gp.sigma_min_plus, gp.sigma_min_minus)
