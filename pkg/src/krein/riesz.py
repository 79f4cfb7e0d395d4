"""Riesz bases: construction, duals, reconstruction, bounds and verdicts.

A Riesz basis is the image of the canonical basis under a pair of bounded
bijective operators, one per definite part. All operator algebra happens in
canonical coordinates, where the product restricted to either part is (plus
or minus) Euclidean and adjoints are conjugate transposes; ambient
coordinates appear only at family boundaries.

Two independent verdicts decide whether an arbitrary family is a Riesz
basis: one through completeness plus two-sided norm-equivalence bounds on
coefficient sums, one through completeness plus invertibility of the Gram
blocks. They must agree; the test suite checks that they do on generated
positives and negatives.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import kernels
from .core import FundamentalDecomposition, j_norm, _half_residual
from .errors import (
    CountMismatch,
    DimensionMismatch,
    LowerBoundZero,
    MixedMembership,
    NotInSubspace,
    NotRiesz,
    SingularOperator,
    SplitMismatch,
)
from .family import VectorFamily, analysis, completeness, split_indices, subspace_membership
from .gram import gram_matrices
from .numerics import DEFAULT_TOLERANCES, Tolerances, invert, require_finite, singular_extremes


class FailureReason(str, enum.Enum):
    NONE = "none"
    INCOMPLETE_PLUS = "incomplete_plus"
    INCOMPLETE_MINUS = "incomplete_minus"
    GRAM_SINGULAR_PLUS = "gram_singular_plus"
    GRAM_SINGULAR_MINUS = "gram_singular_minus"
    MIXED_MEMBERSHIP = "mixed_membership"


class OperatorPair:
    """Bounded bijective operators on the two definite parts.

    Matrices act on canonical coordinates: ``u_plus`` is p-by-p on the
    positive part, ``u_minus`` q-by-q on the negative part. Construction
    validates numeric bijectivity and caches the operator norms and
    inverse-operator norms.
    """

    def __init__(self, u_plus, u_minus, tol: Tolerances = DEFAULT_TOLERANCES):
        self.tol = tol
        self.u_plus = self._checked(u_plus, "u_plus")
        self.u_minus = self._checked(u_minus, "u_minus")
        self.norm_plus, self.inv_norm_plus = self._norms(self.u_plus)
        self.norm_minus, self.inv_norm_minus = self._norms(self.u_minus)

    def _checked(self, u, name: str) -> np.ndarray:
        u = np.ascontiguousarray(u, dtype=np.complex128)
        if u.ndim != 2 or u.shape[0] != u.shape[1]:
            raise DimensionMismatch(f"{name} must be square, got shape {u.shape}")
        require_finite(u, name)
        if u.size:
            sigma_min, sigma_max = singular_extremes(u)
            if sigma_min <= self.tol.rank_tol * sigma_max:
                raise SingularOperator(
                    f"{name} is not numerically bijective (sigma_min={sigma_min:.3e})"
                )
        return u

    @staticmethod
    def _norms(u: np.ndarray) -> tuple[float, float]:
        if u.size == 0:
            return 0.0, 0.0
        sigma_min, sigma_max = singular_extremes(u)
        return sigma_max, 1.0 / sigma_min

    @property
    def p(self) -> int:
        return self.u_plus.shape[0]

    @property
    def q(self) -> int:
        return self.u_minus.shape[0]


@dataclass(frozen=True)
class RieszVerdict:
    is_riesz: bool
    complete_plus: bool
    complete_minus: bool
    bounds_witness: tuple[float, float, float, float] | None
    failure_reason: FailureReason


@dataclass(frozen=True)
class RieszCertificate:
    """Operator pair with its family, dual family and optimal bounds."""

    ops: OperatorPair
    family: VectorFamily
    duals: VectorFamily
    bounds: tuple[float, float, float, float]


def _check_shapes(ops: OperatorPair, fd: FundamentalDecomposition):
    if ops.p != fd.p or ops.q != fd.q:
        raise DimensionMismatch(
            f"operator sizes ({ops.p}, {ops.q}) do not match signature ({fd.p}, {fd.q})"
        )


def construct_riesz(ops: OperatorPair, fd: FundamentalDecomposition) -> VectorFamily:
    """Family whose members are the operator images of the canonical basis.

    Plus-class members come first (images of the positive part's basis),
    then the minus class; the returned family's index split reproduces this
    ordering.
    """
    _check_shapes(ops, fd)
    f = np.hstack([fd.plus_basis @ ops.u_plus, fd.minus_basis @ ops.u_minus])
    fam = split_indices(f, fd)
    if fam.i_plus != tuple(range(fd.p)) or fam.neutral:
        raise ArithmeticError("constructed family failed to split by block")
    return fam


def dual_sequence(ops: OperatorPair, fd: FundamentalDecomposition) -> VectorFamily:
    """Biorthogonal partner family, ``(U^-1)^H`` applied to the canonical basis.

    The duals of a Riesz family form a Riesz family themselves and pair with
    it to ``+1`` on the plus class, ``-1`` on the minus class and ``0``
    elsewhere.
    """
    _check_shapes(ops, fd)
    tol = fd.metric.tol
    d_plus = fd.plus_basis @ invert(ops.u_plus, tol).conj().T
    d_minus = fd.minus_basis @ invert(ops.u_minus, tol).conj().T
    return split_indices(np.hstack([d_plus, d_minus]), fd)


def biorthogonality_residual(fam: VectorFamily, duals: VectorFamily) -> float:
    """Largest deviation of ``[f_n, g_m]`` from the signed identity pattern."""
    if fam.i_plus != duals.i_plus or fam.i_minus != duals.i_minus:
        raise SplitMismatch("families carry different index splits")
    cross = kernels.pairwise_form(fam.vectors, fam.metric.G, duals.vectors)
    expected = np.zeros_like(cross)
    for n in fam.i_plus:
        expected[n, n] = 1.0
    for n in fam.i_minus:
        expected[n, n] = -1.0
    return float(np.abs(cross - expected).max(initial=0.0))


def biorthogonality_check(fam: VectorFamily, duals: VectorFamily) -> bool:
    """Whether the two families pair to ``+delta`` / ``-delta`` by class."""
    fd = fam.fd
    scale = max(
        1.0,
        max((j_norm(fam.vector(n), fd) for n in range(fam.size)), default=0.0)
        * max((j_norm(duals.vector(n), fd) for n in range(duals.size)), default=0.0),
    )
    return biorthogonality_residual(fam, duals) <= fam.metric.tol.rank_tol * scale


def reconstruct(
    f: np.ndarray, fam: VectorFamily, duals: VectorFamily, side: str
) -> np.ndarray:
    """Expand ``f`` over one index class using dual coefficients.

    Returns the class's sign times ``sum [f, g_n] f_n``: products against
    the minus class carry the metric's negative sign, so the Hilbert
    expansion coefficients there are ``-[f, g_n]``. ``f`` must lie in the
    corresponding definite part.
    """
    fd = fam.fd
    f = np.asarray(f, dtype=np.complex128)
    if fam.i_plus != duals.i_plus or fam.i_minus != duals.i_minus:
        raise SplitMismatch("families carry different index splits")
    if _half_residual(f, side, fd) > fam.metric.tol.rank_tol * j_norm(f, fd):
        raise NotInSubspace(f"vector does not lie in the {side} part")
    coeffs = analysis(duals, f)
    if side == "plus":
        members, weights, sign = fam.plus_vectors, coeffs.plus, 1.0
    else:
        members, weights, sign = fam.minus_vectors, coeffs.minus, -1.0
    if weights.size == 0:
        return np.zeros(fam.metric.dim, dtype=np.complex128)
    return sign * (members @ weights)


def optimal_frame_bounds(ops: OperatorPair) -> tuple[float, float, float, float]:
    """Extremal frame constants of the family an operator pair generates.

    The tightest two-sided coefficient bounds are the squared extreme
    singular values of each operator: ``(sigma_min^2, sigma_max^2)`` per
    part. Empty parts report ``(0, 0)``.
    """
    a = 0.0 if ops.p == 0 else 1.0 / ops.inv_norm_plus**2
    b = 0.0 if ops.p == 0 else ops.norm_plus**2
    a_prime = 0.0 if ops.q == 0 else 1.0 / ops.inv_norm_minus**2
    b_prime = 0.0 if ops.q == 0 else ops.norm_minus**2
    return a, b, a_prime, b_prime


def _side_bounds(fam: VectorFamily, side: str) -> tuple[float, float]:
    """Extreme eigenvalues of the coefficient quadratic form on one class."""
    fd = fam.fd
    idx = fam.i_plus if side == "plus" else fam.i_minus
    rows = slice(0, fd.p) if side == "plus" else slice(fd.p, None)
    dim = fd.p if side == "plus" else fd.q
    if not idx:
        return 0.0, 0.0
    coords = (fd.W_inv @ fam.vectors[:, list(idx)])[rows]
    s = np.linalg.svd(coords, compute_uv=False) if dim else np.zeros(0)
    top = float(s[0] ** 2) if s.size else 0.0
    low = float(s[-1] ** 2) if s.size and len(idx) <= dim else 0.0
    return low, top


def _membership_clean(fam: VectorFamily) -> bool:
    return bool(np.all(subspace_membership(fam)))


def frame_inequality_bounds(fam: VectorFamily) -> tuple[float, float, float, float]:
    """Optimal constants in the two-sided coefficient-norm inequalities.

    On each class, the squared norm of ``sum c_n f_n`` is a quadratic form
    in ``c`` whose extreme eigenvalues are the best constants ``(A, B)``;
    members must lie in their class's definite part.
    """
    if not _membership_clean(fam):
        raise MixedMembership("family members sit outside their class subspaces")
    a, b = _side_bounds(fam, "plus")
    a_prime, b_prime = _side_bounds(fam, "minus")
    return a, b, a_prime, b_prime


def _decide(
    fam: VectorFamily,
    witness: tuple[float, float, float, float] | None,
    clean: bool,
) -> RieszVerdict:
    """Shared verdict logic; ``witness`` holds (low, high) pairs per class."""
    tol = fam.metric.tol
    comp = completeness(fam)
    if not clean:
        return RieszVerdict(False, comp.plus, comp.minus, witness, FailureReason.MIXED_MEMBERSHIP)
    if not comp.plus:
        return RieszVerdict(False, comp.plus, comp.minus, witness, FailureReason.INCOMPLETE_PLUS)
    if not comp.minus:
        return RieszVerdict(False, comp.plus, comp.minus, witness, FailureReason.INCOMPLETE_MINUS)
    a, b, a_prime, b_prime = witness
    if fam.i_plus and a <= tol.rank_tol * b:
        return RieszVerdict(
            False, comp.plus, comp.minus, witness, FailureReason.GRAM_SINGULAR_PLUS
        )
    if fam.i_minus and a_prime <= tol.rank_tol * b_prime:
        return RieszVerdict(
            False, comp.plus, comp.minus, witness, FailureReason.GRAM_SINGULAR_MINUS
        )
    return RieszVerdict(True, comp.plus, comp.minus, witness, FailureReason.NONE)


def riesz_via_inequalities(fam: VectorFamily) -> RieszVerdict:
    """Riesz verdict through completeness and coefficient-norm bounds."""
    clean = _membership_clean(fam)
    witness = None
    if clean:
        witness = frame_inequality_bounds(fam)
    return _decide(fam, witness, clean)


def riesz_via_gram(fam: VectorFamily) -> RieszVerdict:
    """Riesz verdict through completeness and Gram-block invertibility."""
    gp = gram_matrices(fam)
    witness = (gp.sigma_min_plus, gp.norm_plus, gp.sigma_min_minus, gp.norm_minus)
    return _decide(fam, witness, _membership_clean(fam))


def factor_riesz(fam: VectorFamily) -> OperatorPair:
    """Recover the operator pair that generates a certified Riesz family.

    The plus operator's columns are the canonical positive-part coordinates
    of the plus-class members in index order (and analogously for minus);
    applying :func:`construct_riesz` to the result reproduces the family.
    Raises :class:`NotRiesz` when the Gram-based verdict fails.
    """
    verdict = riesz_via_gram(fam)
    if not verdict.is_riesz:
        raise NotRiesz(
            f"family is not a Riesz basis ({verdict.failure_reason.value})",
            verdict.failure_reason,
        )
    fd = fam.fd
    if len(fam.i_plus) != fd.p or len(fam.i_minus) != fd.q:
        raise CountMismatch(
            f"index classes of sizes {len(fam.i_plus)}/{len(fam.i_minus)} cannot factor "
            f"through signature ({fd.p}, {fd.q})"
        )
    u_plus = (fd.W_inv @ fam.plus_vectors)[: fd.p]
    u_minus = (fd.W_inv @ fam.minus_vectors)[fd.p :]
    return OperatorPair(u_plus, u_minus, fam.metric.tol)


def span_operator(
    h_fam: VectorFamily, g_fam: VectorFamily, side: str
) -> tuple[np.ndarray, float]:
    """Matrix (in canonical coordinates) of the map sending ``h_n`` to ``g_n``.

    On the chosen class the h-family must have a positive lower coefficient
    bound ``A`` and the g-family is measured by its Bessel bound ``B``; the
    returned map's spectral norm never exceeds ``sqrt(B / A)``, which is
    returned alongside.
    """
    fd = h_fam.fd
    idx_h = h_fam.i_plus if side == "plus" else h_fam.i_minus
    idx_g = g_fam.i_plus if side == "plus" else g_fam.i_minus
    if len(idx_h) != len(idx_g):
        raise CountMismatch(
            f"families have {len(idx_h)} and {len(idx_g)} members on the {side} side"
        )
    for fam, idx in ((h_fam, idx_h), (g_fam, idx_g)):
        ok = subspace_membership(fam)
        if not all(ok[n] for n in idx):
            raise MixedMembership(f"family members sit outside the {side} part")
    dim = fd.p if side == "plus" else fd.q
    if dim == 0:
        return np.zeros((0, 0), dtype=np.complex128), 0.0
    a_h, b_h = _side_bounds(h_fam, side)
    if not idx_h or a_h <= h_fam.metric.tol.rank_tol * b_h:
        raise LowerBoundZero(f"h-family has no positive lower bound on the {side} side")
    _, b_g = _side_bounds(g_fam, side)
    rows = slice(0, fd.p) if side == "plus" else slice(fd.p, None)
    coords_h = (fd.W_inv @ h_fam.vectors[:, list(idx_h)])[rows]
    coords_g = (fd.W_inv @ g_fam.vectors[:, list(idx_g)])[rows]
    op = coords_g @ np.linalg.pinv(coords_h)
    bound = float(np.sqrt(b_g / a_h))
    norm = singular_extremes(op)[1] if op.size else 0.0
    if norm > bound * (1.0 + 1e-8):
        raise ArithmeticError(
            f"span operator norm {norm:.17g} exceeded its bound {bound:.17g}"
        )
    return op, bound


def build_certificate(ops: OperatorPair, fd: FundamentalDecomposition) -> RieszCertificate:
    """Bundle an operator pair with its family, duals and optimal bounds."""
    return RieszCertificate(
        ops=ops,
        family=construct_riesz(ops, fd),
        duals=dual_sequence(ops, fd),
        bounds=optimal_frame_bounds(ops),
    )
