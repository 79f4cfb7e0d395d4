"""Indexed vector families and their synthesis/analysis operators.

A family stores its members as the columns of one ambient-coordinate matrix
and carries the index split: indices whose self-product is nonnegative go to
the plus class, strictly negative ones to the minus class. Self-products
that vanish (within ``rank_tol`` relative to the squared norm) still land in
the plus class but are flagged as neutral; downstream certification rejects
such families.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import kernels
from .core import FundamentalDecomposition, KreinMetric, _columns
from .errors import DimensionMismatch
from .numerics import numeric_rank


@dataclass(frozen=True)
class VectorFamily:
    """Finite indexed family of vectors in one space."""

    metric: KreinMetric
    fd: FundamentalDecomposition
    vectors: np.ndarray
    i_plus: tuple[int, ...]
    i_minus: tuple[int, ...]
    neutral: tuple[int, ...]

    @property
    def size(self) -> int:
        return self.vectors.shape[1]

    @property
    def has_neutral(self) -> bool:
        return bool(self.neutral)

    @property
    def plus_vectors(self) -> np.ndarray:
        return self.vectors[:, list(self.i_plus)]

    @property
    def minus_vectors(self) -> np.ndarray:
        return self.vectors[:, list(self.i_minus)]

    def vector(self, n: int) -> np.ndarray:
        return self.vectors[:, n]


@dataclass(frozen=True)
class CoefficientSequence:
    """Scalar coefficients split by index class."""

    plus: np.ndarray
    minus: np.ndarray


class Completeness(NamedTuple):
    plus: bool
    minus: bool
    total: bool


def split_indices(vectors, fd: FundamentalDecomposition) -> VectorFamily:
    """Build a family, classifying each index by the sign of its self-product."""
    m = fd.metric
    f = _columns(vectors, m.dim).copy()
    f.setflags(write=False)
    if f.shape[1] == 0:
        return VectorFamily(m, fd, f, (), (), ())
    self_products = np.einsum("ij,ij->j", f.conj(), m.G @ f).real
    jn2 = np.sum(np.abs(fd.W_inv @ f) ** 2, axis=0)
    is_neutral = np.abs(self_products) <= m.tol.rank_tol * jn2
    is_minus = ~is_neutral & (self_products < 0.0)
    i_plus = tuple(int(n) for n in range(f.shape[1]) if not is_minus[n])
    i_minus = tuple(int(n) for n in range(f.shape[1]) if is_minus[n])
    neutral = tuple(int(n) for n in range(f.shape[1]) if is_neutral[n])
    return VectorFamily(m, fd, f, i_plus, i_minus, neutral)


def subspace_membership(fam: VectorFamily) -> np.ndarray:
    """Per-index check that each member lies in its class's definite part."""
    fd = fam.fd
    u = fd.W_inv @ fam.vectors
    norms = np.linalg.norm(u, axis=0)
    wrong = np.empty(fam.size)
    for n in fam.i_plus:
        wrong[n] = np.linalg.norm(u[fd.p :, n])
    for n in fam.i_minus:
        wrong[n] = np.linalg.norm(u[: fd.p, n])
    return wrong <= fam.metric.tol.rank_tol * norms


def synthesis(fam: VectorFamily, c: CoefficientSequence) -> tuple[np.ndarray, np.ndarray]:
    """Weighted sums over each index class: ``sum c_n f_n``."""
    plus = np.asarray(c.plus, dtype=np.complex128)
    minus = np.asarray(c.minus, dtype=np.complex128)
    if plus.shape != (len(fam.i_plus),) or minus.shape != (len(fam.i_minus),):
        raise DimensionMismatch(
            f"coefficient lengths {plus.shape[0]}/{minus.shape[0]} do not match "
            f"index split {len(fam.i_plus)}/{len(fam.i_minus)}"
        )
    n = fam.metric.dim
    f_plus = fam.plus_vectors @ plus if plus.size else np.zeros(n, dtype=np.complex128)
    f_minus = fam.minus_vectors @ minus if minus.size else np.zeros(n, dtype=np.complex128)
    return f_plus, f_minus


def analysis(fam: VectorFamily, f: np.ndarray) -> CoefficientSequence:
    """Products of ``f`` against every family member, split by class."""
    f = np.asarray(f, dtype=np.complex128)
    if f.shape != (fam.metric.dim,):
        raise DimensionMismatch(
            f"vector of shape {f.shape} does not match dimension {fam.metric.dim}"
        )
    coeffs = kernels.batch_analysis(fam.vectors, fam.metric.G, f[:, None])[:, 0]
    return CoefficientSequence(plus=coeffs[list(fam.i_plus)], minus=coeffs[list(fam.i_minus)])


def completeness(fam: VectorFamily) -> Completeness:
    """Whether each class spans its part and the family spans the space."""
    fd = fam.fd
    tol = fam.metric.tol
    u = fd.W_inv @ fam.vectors

    def spans(rows: slice, cols: tuple[int, ...], need: int) -> bool:
        if need == 0:
            return True
        if not cols:
            return False
        return numeric_rank(u[rows, list(cols)], tol) == need

    plus = spans(slice(0, fd.p), fam.i_plus, fd.p)
    minus = spans(slice(fd.p, None), fam.i_minus, fd.q)
    total = fam.size > 0 and numeric_rank(fam.vectors, tol) == fam.metric.dim
    return Completeness(plus, minus, total)
