"""Deterministic random instances: metrics, operator pairs, planted defects.

Everything is driven by the documented splitmix64 stream (:mod:`krein.rng`),
so a seed fully determines an instance, bit for bit, across runs. Each
generator role draws from its own derived child seed: the metric from child
0, the operator pair from child 1, defect choices from child 2. A defective
family therefore perturbs exactly the clean family the same seed would
produce.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .core import FundamentalDecomposition, KreinMetric, fundamental_decomposition, j_norm
from .errors import DefectImpossible
from .family import VectorFamily, split_indices
from .numerics import DEFAULT_TOLERANCES, Tolerances
from .riesz import FailureReason, OperatorPair, RieszCertificate, build_certificate
from .rng import SplitMix64, derive_seed

DEFECTS = ("drop_vector", "duplicate_vector", "neutral_inject", "mix_halves")

_METRIC_STREAM = 0
_OPERATOR_STREAM = 1
_DEFECT_STREAM = 2


@dataclass(frozen=True)
class GenSpec:
    """Recipe for one random instance.

    ``signature`` fixes the inertia (p, q) and hence the dimension; when
    None, the dimension is drawn from ``dim_range`` and the split is
    uniform over 0..n. ``cond_cap`` caps the condition number of the
    generated operators (1 forces unitaries). ``defect`` names the flaw to
    plant, if any.
    """

    seed: int
    dim_range: tuple[int, int] = (2, 12)
    signature: tuple[int, int] | None = None
    cond_cap: float = 1e4
    defect: str | None = None

    def __post_init__(self):
        lo, hi = self.dim_range
        if not (1 <= lo <= hi <= 64):
            raise ValueError(f"dim_range must satisfy 1 <= lo <= hi <= 64, got {self.dim_range}")
        if self.cond_cap < 1.0:
            raise ValueError(f"cond_cap must be >= 1, got {self.cond_cap}")
        if self.signature is not None:
            p, q = self.signature
            if p < 0 or q < 0 or not (1 <= p + q <= 64):
                raise ValueError(f"signature must be nonnegative with 1 <= p+q <= 64, got {self.signature}")
        if self.defect is not None and self.defect not in DEFECTS:
            raise ValueError(f"unknown defect {self.defect!r}, expected one of {DEFECTS}")


class DefectOutcome(NamedTuple):
    family: VectorFamily
    expected_reason: FailureReason


def _random_unitary(stream: SplitMix64, n: int) -> np.ndarray:
    z = stream.complex_gaussians(n * n).reshape(n, n)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d.conj() / np.abs(d))


def gen_metric(spec: GenSpec, tol: Tolerances = DEFAULT_TOLERANCES) -> KreinMetric:
    """Random Hermitian invertible metric with the requested inertia.

    Eigenvalue magnitudes are uniform in [0.1, 10], so the metric is safely
    nondegenerate; the eigenvector frame is Haar-like from a QR-corrected
    complex Gaussian matrix.
    """
    stream = SplitMix64(derive_seed(spec.seed, _METRIC_STREAM))
    if spec.signature is not None:
        p, q = spec.signature
        n = p + q
    else:
        lo, hi = spec.dim_range
        n = lo + stream.integer(hi - lo + 1)
        p = stream.integer(n + 1)
        q = n - p
    mags = 0.1 + 9.9 * stream.uniforms(n)
    lam = np.concatenate([mags[:p], -mags[p:]])
    u = _random_unitary(stream, n)
    g = (u * lam) @ u.conj().T
    g = (g + g.conj().T) / 2.0
    return KreinMetric(g, tol)


def _random_operator(stream: SplitMix64, n: int, cond_cap: float) -> np.ndarray:
    if n == 0:
        return np.zeros((0, 0), dtype=np.complex128)
    left = _random_unitary(stream, n)
    right = _random_unitary(stream, n)
    # Singular values in [cap^-1/2, cap^1/2]: ratio stays within the cap and
    # magnitudes stay centered, which keeps downstream residuals small.
    sigma = cond_cap ** (stream.uniforms(n) - 0.5)
    scale = 0.5 * 4.0 ** stream.uniforms(1)[0]
    return scale * ((left * sigma) @ right.conj().T)


def gen_operator_pair(spec: GenSpec, fd: FundamentalDecomposition) -> OperatorPair:
    """Random bounded bijective pair with condition numbers within the cap."""
    stream = SplitMix64(derive_seed(spec.seed, _OPERATOR_STREAM))
    u_plus = _random_operator(stream, fd.p, spec.cond_cap)
    u_minus = _random_operator(stream, fd.q, spec.cond_cap)
    return OperatorPair(u_plus, u_minus, fd.metric.tol)


def gen_riesz_instance(
    spec: GenSpec, tol: Tolerances = DEFAULT_TOLERANCES
) -> tuple[KreinMetric, FundamentalDecomposition, RieszCertificate]:
    """Metric, decomposition and a full certificate from one seed."""
    metric = gen_metric(spec, tol)
    fd = fundamental_decomposition(metric)
    ops = gen_operator_pair(spec, fd)
    return metric, fd, build_certificate(ops, fd)


def gen_defective_family(
    spec: GenSpec, m: KreinMetric, fd: FundamentalDecomposition
) -> DefectOutcome:
    """Plant the requested defect into the seed's clean Riesz family.

    drop_vector removes a member (kills completeness on its side);
    duplicate_vector appends a copy (kills the Gram block's invertibility);
    neutral_inject appends a vector with vanishing self-product;
    mix_halves bleeds a negative-part component into a plus-class member.
    The returned expected reason is the verdict the planted flaw forces.
    """
    if spec.defect is None:
        raise DefectImpossible("spec carries no defect to plant")
    base = build_certificate(gen_operator_pair(spec, fd), fd).family
    stream = SplitMix64(derive_seed(spec.seed, _DEFECT_STREAM))
    n = base.size
    vectors = base.vectors.copy()

    if spec.defect == "drop_vector":
        if n <= 1:
            raise DefectImpossible("cannot drop a vector from a 1-dimensional instance")
        k = stream.integer(n)
        kept = [i for i in range(n) if i != k]
        reason = (
            FailureReason.INCOMPLETE_PLUS if k in base.i_plus else FailureReason.INCOMPLETE_MINUS
        )
        return DefectOutcome(split_indices(vectors[:, kept], fd), reason)

    if spec.defect == "duplicate_vector":
        k = stream.integer(n)
        out = np.hstack([vectors, vectors[:, k : k + 1]])
        reason = (
            FailureReason.GRAM_SINGULAR_PLUS
            if k in base.i_plus
            else FailureReason.GRAM_SINGULAR_MINUS
        )
        return DefectOutcome(split_indices(out, fd), reason)

    if fd.p == 0 or fd.q == 0:
        raise DefectImpossible(f"defect {spec.defect} needs both definite parts nonempty")

    if spec.defect == "neutral_inject":
        u_plus = stream.complex_gaussians(fd.p)
        u_minus = stream.complex_gaussians(fd.q)
        coords = np.concatenate(
            [u_plus / np.linalg.norm(u_plus), u_minus / np.linalg.norm(u_minus)]
        )
        out = np.hstack([vectors, (fd.W @ coords)[:, None]])
        return DefectOutcome(split_indices(out, fd), FailureReason.MIXED_MEMBERSHIP)

    # mix_halves: shift one plus-class member by half its size into the
    # negative part; its self-product stays positive so it keeps its class.
    k = base.i_plus[stream.integer(len(base.i_plus))]
    u_minus = stream.complex_gaussians(fd.q)
    bleed = fd.minus_basis @ (u_minus / np.linalg.norm(u_minus))
    vectors[:, k] += 0.5 * j_norm(base.vector(k), fd) * bleed
    return DefectOutcome(split_indices(vectors, fd), FailureReason.MIXED_MEMBERSHIP)
