"""Dense complex linear-algebra kernel and the package-wide tolerances.

All matrices are numpy ``complex128`` arrays in C (row-major) order; vectors
are 1-D arrays. Every comparison in the package is relative to the largest
singular value of the matrix at hand, never absolute.

Eigen- and singular-value decompositions are delegated to numpy's LAPACK
bindings; at the target sizes (n <= 64) they are exact-arithmetic-grade.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptyMatrix, NonSquare, NotHermitian, Singular


@dataclass(frozen=True)
class Tolerances:
    """Relative tolerances used everywhere.

    rank_tol
        Singular values below ``rank_tol * sigma_max`` count as zero; this
        single knob decides rank, invertibility and every Riesz verdict.
    sym_tol
        Allowed relative deviation of a matrix from its conjugate transpose.
    recon_tol
        Allowed relative residual of a reconstruction formula.
    """

    rank_tol: float = 1e-10
    sym_tol: float = 1e-10
    recon_tol: float = 1e-8

    def __post_init__(self):
        for name in ("rank_tol", "sym_tol", "recon_tol"):
            value = getattr(self, name)
            if not (0.0 < value < 1.0):
                raise ValueError(f"{name} must lie strictly between 0 and 1, got {value}")


DEFAULT_TOLERANCES = Tolerances()


def require_finite(a, what="matrix"):
    if a.size and not np.all(np.isfinite(a)):
        raise ValueError(f"{what} contains non-finite entries")


def spectral_norm(a: np.ndarray) -> float:
    """Largest singular value; 0 for empty matrices."""
    if a.size == 0:
        return 0.0
    return float(np.linalg.svd(a, compute_uv=False)[0])


def hermitian_deviation(a: np.ndarray) -> float:
    """Spectral norm of ``a - a^H``."""
    return spectral_norm(a - a.conj().T)


def hermitian_eig(a: np.ndarray, tol: Tolerances = DEFAULT_TOLERANCES):
    """Eigendecomposition of a Hermitian matrix.

    Returns ``(w, V)`` with eigenvalues ``w`` ascending and the columns of
    ``V`` orthonormal eigenvectors. Raises :class:`NonSquare` or
    :class:`NotHermitian` when the input does not qualify.
    """
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NonSquare(f"expected a square matrix, got shape {a.shape}")
    scale = spectral_norm(a)
    if hermitian_deviation(a) > tol.sym_tol * max(scale, np.finfo(float).tiny):
        raise NotHermitian(
            f"matrix deviates from Hermitian by {hermitian_deviation(a):.3e} "
            f"(allowed {tol.sym_tol * scale:.3e})"
        )
    w, v = np.linalg.eigh((a + a.conj().T) / 2.0)
    return w, v


def singular_extremes(a: np.ndarray) -> tuple[float, float]:
    """Smallest and largest singular value of a nonempty matrix."""
    a = np.asarray(a, dtype=np.complex128)
    if a.size == 0:
        raise EmptyMatrix("singular values of an empty matrix are undefined")
    s = np.linalg.svd(a, compute_uv=False)
    return float(s[-1]), float(s[0])


def numeric_rank(a: np.ndarray, tol: Tolerances = DEFAULT_TOLERANCES) -> int:
    """Number of singular values above ``rank_tol`` relative to the largest."""
    a = np.asarray(a, dtype=np.complex128)
    if a.size == 0:
        raise EmptyMatrix("rank of an empty matrix is undefined")
    s = np.linalg.svd(a, compute_uv=False)
    if s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > tol.rank_tol * s[0]))


def invert(a: np.ndarray, tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """Inverse of a numerically nonsingular square matrix.

    Raises :class:`Singular` (carrying ``sigma_min``) when the smallest
    singular value falls below ``rank_tol * sigma_max``.
    """
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NonSquare(f"expected a square matrix, got shape {a.shape}")
    if a.size == 0:
        return a.copy()
    sigma_min, sigma_max = singular_extremes(a)
    if sigma_min <= tol.rank_tol * sigma_max:
        raise Singular(
            f"matrix is numerically singular (sigma_min={sigma_min:.3e}, "
            f"sigma_max={sigma_max:.3e})",
            sigma_min,
        )
    return np.linalg.inv(a)
