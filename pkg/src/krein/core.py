"""Indefinite inner-product spaces and their fundamental decomposition.

A space is modelled by a Hermitian invertible metric matrix ``G`` on C^n; the
product ``[x, y]`` is linear in the first argument and conjugate-linear in
the second, ``[x, y] = y^H G x``. The eigendecomposition of ``G`` splits the
space into a positive-definite part (dimension ``p``) and a
negative-definite part (dimension ``q``), carried by the columns of a basis
matrix ``W`` normalized so that ``W^H G W = diag(+1 ... +1, -1 ... -1)``.

Coordinates with respect to ``W`` are called canonical; in them the product
restricted to either part is (plus or minus) the Euclidean one, which is
what makes adjoints plain conjugate transposes downstream.

Vectors are 1-D complex128 arrays in the ambient basis unless a function
says otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DegenerateMetric, DimensionMismatch, NotHermitian, NotInSubspace
from .numerics import (
    DEFAULT_TOLERANCES,
    Tolerances,
    hermitian_deviation,
    require_finite,
    singular_extremes,
    spectral_norm,
)


def _readonly(a: np.ndarray) -> np.ndarray:
    out = np.ascontiguousarray(a, dtype=np.complex128)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class KreinMetric:
    """Hermitian invertible matrix defining the indefinite product."""

    G: np.ndarray
    tol: Tolerances = DEFAULT_TOLERANCES

    def __post_init__(self):
        g = np.ascontiguousarray(self.G, dtype=np.complex128)
        if g.ndim != 2 or g.shape[0] != g.shape[1] or g.shape[0] == 0:
            raise DimensionMismatch(f"metric must be square and nonempty, got shape {g.shape}")
        require_finite(g, "metric")
        scale = spectral_norm(g)
        if hermitian_deviation(g) > self.tol.sym_tol * scale:
            raise NotHermitian(
                f"metric deviates from Hermitian by {hermitian_deviation(g):.3e} "
                f"(allowed {self.tol.sym_tol * scale:.3e})"
            )
        sigma_min, sigma_max = singular_extremes(g)
        if sigma_min <= self.tol.rank_tol * sigma_max:
            raise DegenerateMetric(
                f"metric is numerically degenerate (sigma_min={sigma_min:.3e})"
            )
        object.__setattr__(self, "G", _readonly(g))

    @property
    def dim(self) -> int:
        return self.G.shape[0]


@dataclass(frozen=True)
class FundamentalDecomposition:
    """Canonical splitting of a space into its definite parts.

    ``W`` holds the canonical basis as columns (positive part first), with
    ``W^H G W = diag(J)``; ``W_inv`` is its exact-formula inverse;
    ``eigenvalues`` are the metric eigenvalues in column order. ``P_plus``
    and ``P_minus`` project onto the two parts along each other.
    """

    metric: KreinMetric
    p: int
    q: int
    W: np.ndarray
    W_inv: np.ndarray
    J: np.ndarray
    eigenvalues: np.ndarray
    P_plus: np.ndarray
    P_minus: np.ndarray

    @property
    def dim(self) -> int:
        return self.metric.dim

    @property
    def plus_basis(self) -> np.ndarray:
        return self.W[:, : self.p]

    @property
    def minus_basis(self) -> np.ndarray:
        return self.W[:, self.p :]

    def to_canonical(self, x: np.ndarray) -> np.ndarray:
        """Coordinates with respect to the canonical basis (vector or columns)."""
        return self.W_inv @ x

    def to_ambient(self, u: np.ndarray) -> np.ndarray:
        return self.W @ u


def _phase_normalize(v: np.ndarray) -> np.ndarray:
    """Rotate each column so its first significantly nonzero entry is real positive."""
    v = v.copy()
    for k in range(v.shape[1]):
        col = v[:, k]
        mags = np.abs(col)
        top = mags.max()
        if top == 0.0:
            continue
        lead = int(np.argmax(mags > 1e-12 * top))
        phase = col[lead] / abs(col[lead])
        v[:, k] = col * np.conj(phase)
    return v


def fundamental_decomposition(m: KreinMetric) -> FundamentalDecomposition:
    """Split a space into its positive and negative parts.

    Eigenvectors of the metric with positive eigenvalues span the positive
    part and analogously for negative ones; columns are rescaled by
    ``|lambda|^(-1/2)`` so the product of the canonical basis is exactly
    ``diag(+-1)``. Within each sign class columns are ordered by descending
    eigenvalue magnitude, and each column's leading entry is made real
    positive, so the basis is deterministic.
    """
    g = (m.G + m.G.conj().T) / 2.0
    lam, vec = np.linalg.eigh(g)
    if np.min(np.abs(lam)) <= m.tol.rank_tol * np.max(np.abs(lam)):
        raise DegenerateMetric(
            f"metric has an eigenvalue of magnitude {np.min(np.abs(lam)):.3e}; "
            "no fundamental decomposition exists"
        )
    pos = [int(i) for i in np.argsort(-lam, kind="stable") if lam[i] > 0]
    neg = [int(i) for i in np.argsort(lam, kind="stable") if lam[i] < 0]
    order = pos + neg
    lam = lam[order]
    vec = _phase_normalize(vec[:, order])
    p, q = len(pos), len(neg)
    scale = np.abs(lam) ** -0.5
    w = vec * scale
    w_inv = (vec * np.abs(lam) ** 0.5).conj().T
    j = np.concatenate([np.ones(p), -np.ones(q)])
    p_plus = w[:, :p] @ w_inv[:p, :]
    p_minus = w[:, p:] @ w_inv[p:, :]
    return FundamentalDecomposition(
        metric=m,
        p=p,
        q=q,
        W=_readonly(w),
        W_inv=_readonly(w_inv),
        J=j,
        eigenvalues=lam,
        P_plus=_readonly(p_plus),
        P_minus=_readonly(p_minus),
    )


def indefinite_inner(x: np.ndarray, y: np.ndarray, m: KreinMetric) -> complex:
    """The product ``[x, y] = y^H G x``."""
    x = np.asarray(x, dtype=np.complex128)
    y = np.asarray(y, dtype=np.complex128)
    if x.shape != (m.dim,) or y.shape != (m.dim,):
        raise DimensionMismatch(
            f"vectors of shape {x.shape}, {y.shape} do not match dimension {m.dim}"
        )
    return complex(np.vdot(y, m.G @ x))


def j_norm(x: np.ndarray, fd: FundamentalDecomposition) -> float:
    """Hilbert norm induced by the decomposition.

    Equals the Euclidean norm of the canonical coordinates, i.e. the square
    root of ``[P+x, P+x] - [P-x, P-x]``.
    """
    x = np.asarray(x, dtype=np.complex128)
    if x.shape != (fd.dim,):
        raise DimensionMismatch(f"vector of shape {x.shape} does not match dimension {fd.dim}")
    return float(np.linalg.norm(fd.W_inv @ x))


def is_orthonormal_basis(vectors, m: KreinMetric) -> bool:
    """Whether the family pairs to ``+-1`` on the diagonal and 0 elsewhere."""
    f = _columns(vectors, m.dim)
    if f.shape[1] != m.dim:
        raise DimensionMismatch(
            f"an orthonormal basis of a {m.dim}-dimensional space needs exactly "
            f"{m.dim} vectors, got {f.shape[1]}"
        )
    prod = kernels.pairwise_form(f, m.G)
    off = prod - np.diag(np.diag(prod))
    if np.abs(off).max(initial=0.0) > m.tol.rank_tol:
        return False
    return bool(np.all(np.abs(np.abs(np.diag(prod)) - 1.0) <= m.tol.rank_tol))


def equality_via_pairings(
    x: np.ndarray,
    y: np.ndarray,
    side: str,
    fd: FundamentalDecomposition,
) -> bool:
    """Test ``x == y`` through products against one definite part's basis.

    Both vectors must lie in the requested part (``"plus"`` or ``"minus"``).
    Returns True when every product of ``x - y`` against that part's
    canonical basis vanishes within ``rank_tol`` relative to the vectors'
    sizes; for vectors of a definite part this coincides with the norm of
    the difference being negligible.
    """
    m = fd.metric
    x = np.asarray(x, dtype=np.complex128)
    y = np.asarray(y, dtype=np.complex128)
    jx, jy = j_norm(x, fd), j_norm(y, fd)
    for vec, jn in ((x, jx), (y, jy)):
        if _half_residual(vec, side, fd) > m.tol.rank_tol * jn:
            raise NotInSubspace(f"vector does not lie in the {side} part")
    basis = fd.plus_basis if side == "plus" else fd.minus_basis
    pairings = kernels.batch_analysis(basis, m.G, (x - y)[:, None])[:, 0]
    return bool(np.abs(pairings).max(initial=0.0) <= m.tol.rank_tol * (jx + jy))


def _half_residual(x: np.ndarray, side: str, fd: FundamentalDecomposition) -> float:
    """Norm of the component of ``x`` outside the requested part."""
    if side not in ("plus", "minus"):
        raise ValueError(f"side must be 'plus' or 'minus', got {side!r}")
    u = fd.W_inv @ x
    return float(np.linalg.norm(u[fd.p :] if side == "plus" else u[: fd.p]))


def _columns(vectors, dim: int) -> np.ndarray:
    """Stack vectors as columns of an (dim, N) complex matrix."""
    if isinstance(vectors, np.ndarray) and vectors.ndim == 2:
        f = np.ascontiguousarray(vectors, dtype=np.complex128)
    else:
        vs = [np.asarray(v, dtype=np.complex128) for v in vectors]
        for v in vs:
            if v.shape != (dim,):
                raise DimensionMismatch(
                    f"family vector of shape {v.shape} does not match dimension {dim}"
                )
        f = np.empty((dim, len(vs)), dtype=np.complex128)
        for k, v in enumerate(vs):
            f[:, k] = v
    if f.shape[0] != dim:
        raise DimensionMismatch(f"family matrix has {f.shape[0]} rows, expected {dim}")
    require_finite(f, "family")
    return f
