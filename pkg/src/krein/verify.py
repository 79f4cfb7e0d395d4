"""Batch verification: run generated instances through every cross-check.

Each property compares two independent routes to the same quantity (operator
bounds against coefficient bounds, ambient Gram entries against canonical
ones, verdicts against planted defects, ...). A property's *margin* is
``observed / allowed``: at most 1.0 means pass. The suite summary carries
per-property pass counts and worst margins and is fully determined by its
seed; it contains no wall-clock data.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .core import fundamental_decomposition
from .errors import NotRiesz
from .gram import absolute_sum_bessel_test, absolute_sum_bound, bessel_from_gram, gram_matrices
from .generate import DEFECTS, GenSpec, gen_defective_family, gen_metric, gen_operator_pair
from .numerics import DEFAULT_TOLERANCES, Tolerances, spectral_norm
from .riesz import (
    FailureReason,
    biorthogonality_residual,
    build_certificate,
    construct_riesz,
    dual_sequence,
    factor_riesz,
    frame_inequality_bounds,
    reconstruct,
    riesz_via_gram,
    riesz_via_inequalities,
)
from .rng import SplitMix64, derive_seed

_TINY = np.finfo(float).tiny


@dataclass
class PropertyStat:
    name: str
    passes: int = 0
    failures: int = 0
    worst_margin: float = 0.0

    def record(self, margin: float):
        if margin <= 1.0:
            self.passes += 1
        else:
            self.failures += 1
        self.worst_margin = max(self.worst_margin, margin)


@dataclass
class SuiteSummary:
    seed: int
    trials: int
    dim_range: tuple[int, int]
    cond_cap: float
    properties: list[PropertyStat] = field(default_factory=list)

    @property
    def violations(self) -> int:
        return sum(p.failures for p in self.properties)

    @property
    def ok(self) -> bool:
        return self.violations == 0

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "trials": self.trials,
            "dim_range": list(self.dim_range),
            "cond_cap": self.cond_cap,
            "violations": self.violations,
            "properties": [
                {
                    "name": p.name,
                    "passes": p.passes,
                    "failures": p.failures,
                    "worst_margin": p.worst_margin,
                }
                for p in self.properties
            ],
        }


_PROPERTIES = (
    "optimal_bounds_match",
    "verdict_agreement_clean",
    "reconstruction",
    "biorthogonality",
    "bessel_tightness",
    "gram_entry_oracle",
    "bessel_vs_absolute_sum",
    "dual_round_trip",
    "factor_round_trip",
    "planted_defect_verdicts",
    "hermitian_absolute_sum",
)


def _rel_err(got: float, want: float) -> float:
    return abs(got - want) / max(abs(want), _TINY)


def _bessel_ratios(fam, side: str, samples: np.ndarray) -> np.ndarray:
    """Coefficient power over squared norm for ambient samples of one part."""
    members = fam.plus_vectors if side == "plus" else fam.minus_vectors
    coeffs = kernels.batch_analysis(members, fam.metric.G, samples)
    power = np.sum(np.abs(coeffs) ** 2, axis=0)
    norms2 = np.sum(np.abs(fam.fd.W_inv @ samples) ** 2, axis=0)
    return power / norms2


def run_suite(
    trials: int = 200,
    seed: int = 0,
    dim_range: tuple[int, int] = (2, 12),
    cond_cap: float = 1e4,
    tol: Tolerances = DEFAULT_TOLERANCES,
    recon_samples: int = 100,
    rayleigh_samples: int = 1000,
    hermitian_sweep: int = 500,
) -> SuiteSummary:
    """Evaluate every property on ``trials`` clean + ``trials`` defective instances."""
    stats = {name: PropertyStat(name) for name in _PROPERTIES}
    summary = SuiteSummary(seed=seed, trials=trials, dim_range=dim_range, cond_cap=cond_cap)

    for i in range(trials):
        spec = GenSpec(
            seed=derive_seed(seed, i), dim_range=dim_range, cond_cap=cond_cap
        )
        _check_clean_instance(spec, tol, stats, recon_samples, rayleigh_samples)

    shape_stream = SplitMix64(derive_seed(seed, 2**40))
    for i in range(trials):
        lo, hi = dim_range
        n = max(2, lo) + shape_stream.integer(max(hi - max(2, lo) + 1, 1))
        p = 1 + shape_stream.integer(n - 1)
        spec = GenSpec(
            seed=derive_seed(seed, 2**41 + i),
            signature=(p, n - p),
            cond_cap=cond_cap,
            defect=DEFECTS[i % len(DEFECTS)],
        )
        _check_defective_instance(spec, tol, stats)

    _check_hermitian_sweep(derive_seed(seed, 2**42), hermitian_sweep, stats)

    summary.properties = [stats[name] for name in _PROPERTIES]
    return summary


def _check_clean_instance(spec, tol, stats, recon_samples, rayleigh_samples):
    metric = gen_metric(spec, tol)
    fd = fundamental_decomposition(metric)
    ops = gen_operator_pair(spec, fd)
    cert = build_certificate(ops, fd)
    fam, duals = cert.family, cert.duals
    sample_stream = SplitMix64(derive_seed(spec.seed, 3))

    # Optimal bounds from the operators match the family's coefficient bounds.
    measured = frame_inequality_bounds(fam)
    stats["optimal_bounds_match"].record(
        max(_rel_err(m, w) for m, w in zip(measured, cert.bounds)) / 1e-8
        if any(cert.bounds)
        else 0.0
    )

    # Both verdict routes and factorability agree that the family is Riesz.
    v_ineq = riesz_via_inequalities(fam)
    v_gram = riesz_via_gram(fam)
    try:
        factor_riesz(fam)
        factored = True
    except NotRiesz:
        factored = False
    agree = (
        v_ineq.is_riesz
        and v_gram.is_riesz
        and factored
        and v_ineq.failure_reason is FailureReason.NONE
        and v_gram.failure_reason is FailureReason.NONE
    )
    stats["verdict_agreement_clean"].record(0.0 if agree else 2.0)

    # Dual-coefficient expansion reproduces vectors of each part.
    margin = 0.0
    for side, dim, basis in (("plus", fd.p, fd.plus_basis), ("minus", fd.q, fd.minus_basis)):
        if dim == 0:
            continue
        coords = sample_stream.complex_gaussians(dim * recon_samples).reshape(dim, recon_samples)
        samples = basis @ coords
        members = fam.plus_vectors if side == "plus" else fam.minus_vectors
        dual_members = duals.plus_vectors if side == "plus" else duals.minus_vectors
        sign = 1.0 if side == "plus" else -1.0
        weights = kernels.batch_analysis(dual_members, metric.G, samples)
        recon = sign * (members @ weights)
        resid = np.linalg.norm(fd.W_inv @ (recon - samples), axis=0)
        norms = np.linalg.norm(coords, axis=0)
        margin = max(margin, float(np.max(resid / (tol.recon_tol * norms))))
        one = reconstruct(samples[:, 0], fam, duals, side)
        margin = max(
            margin,
            float(np.linalg.norm(fd.W_inv @ (one - samples[:, 0]))) / (tol.recon_tol * norms[0]),
        )
    stats["reconstruction"].record(margin)

    # Family against duals pairs to the signed identity.
    stats["biorthogonality"].record(biorthogonality_residual(fam, duals) / 1e-9)

    # The Gram norm is the exact supremum of coefficient power per unit norm:
    # sampled ratios never beat it, the top singular direction attains it.
    gp = gram_matrices(fam)
    margin = 0.0
    for side, dim, basis, bound in (
        ("plus", fd.p, fd.plus_basis, gp.norm_plus),
        ("minus", fd.q, fd.minus_basis, gp.norm_minus),
    ):
        idx = fam.i_plus if side == "plus" else fam.i_minus
        if dim == 0 or not idx:
            continue
        coords = sample_stream.complex_gaussians(dim * rayleigh_samples).reshape(
            dim, rayleigh_samples
        )
        ratios = _bessel_ratios(fam, side, basis @ coords)
        margin = max(margin, float(np.max(ratios) - bound) / (1e-8 * bound))
        rows = slice(0, fd.p) if side == "plus" else slice(fd.p, None)
        member_coords = (fd.W_inv @ (fam.vectors[:, list(idx)]))[rows]
        top_dir = np.linalg.svd(member_coords)[0][:, 0]
        achieved = float(_bessel_ratios(fam, side, (basis @ top_dir)[:, None])[0])
        margin = max(margin, (bound - achieved) / (1e-8 * bound))
    stats["bessel_tightness"].record(margin)

    # Ambient Gram entries equal the canonical-coordinate construction.
    coords = fd.W_inv @ fam.vectors
    c_plus = coords[: fd.p][:, list(fam.i_plus)]
    c_minus = coords[fd.p :][:, list(fam.i_minus)]
    scale = max(gp.norm_plus, gp.norm_minus, _TINY)
    dev = 0.0
    if c_plus.size:
        dev = max(dev, float(np.abs(gp.g_plus - c_plus.T @ c_plus.conj()).max()))
    if c_minus.size:
        dev = max(dev, float(np.abs(gp.g_minus + c_minus.T @ c_minus.conj()).max()))
    stats["gram_entry_oracle"].record(dev / (1e-10 * scale))

    # Gram-derived Bessel bounds never beat the absolute-entry-sum bound.
    b_plus, b_minus = bessel_from_gram(gp)
    total = absolute_sum_bessel_test(fam)
    stats["bessel_vs_absolute_sum"].record(
        (max(b_plus, b_minus) - total) / (1e-10 * max(total, _TINY))
    )

    # Factoring the duals and dualizing again lands back on the family.
    dd = dual_sequence(factor_riesz(duals), fd)
    dev = np.linalg.norm(fd.W_inv @ (dd.vectors - fam.vectors), axis=0)
    norms = np.linalg.norm(fd.W_inv @ fam.vectors, axis=0)
    stats["dual_round_trip"].record(float(np.max(dev / (1e-8 * norms))))

    # Factoring the family reproduces it through reconstruction.
    rebuilt = construct_riesz(factor_riesz(fam), fd)
    dev = np.linalg.norm(fd.W_inv @ (rebuilt.vectors - fam.vectors), axis=0)
    stats["factor_round_trip"].record(float(np.max(dev / (1e-10 * norms))))


def _check_defective_instance(spec, tol, stats):
    metric = gen_metric(spec, tol)
    fd = fundamental_decomposition(metric)
    fam, expected = gen_defective_family(spec, metric, fd)
    v_ineq = riesz_via_inequalities(fam)
    v_gram = riesz_via_gram(fam)
    try:
        factor_riesz(fam)
        factored = True
    except NotRiesz:
        factored = False
    ok = (
        not v_ineq.is_riesz
        and not v_gram.is_riesz
        and not factored
        and v_ineq.failure_reason is expected
        and v_gram.failure_reason is expected
    )
    stats["planted_defect_verdicts"].record(0.0 if ok else 2.0)


def _check_hermitian_sweep(sweep_seed: int, count: int, stats):
    """Spectral norm of a random Hermitian matrix never beats its entry-modulus sum."""
    stream = SplitMix64(sweep_seed)
    worst = 0.0
    for _ in range(count):
        n = 1 + stream.integer(10)
        z = stream.complex_gaussians(n * n).reshape(n, n)
        h = (z + z.conj().T) / 2.0
        total = absolute_sum_bound(h)
        worst = max(worst, spectral_norm(h) / (total * (1.0 + 1e-12)))
    stats["hermitian_absolute_sum"].record(worst)
