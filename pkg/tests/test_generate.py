import numpy as np
import pytest

from krein import (
    DEFECTS,
    GenSpec,
    fundamental_decomposition,
    gen_defective_family,
    gen_metric,
    gen_operator_pair,
    indefinite_inner,
    riesz_via_gram,
)
from krein.errors import DefectImpossible


class TestGenSpec:
    def test_defaults(self):
        spec = GenSpec(seed=1)
        assert spec.dim_range == (2, 12)
        assert spec.cond_cap == 1e4
        assert spec.defect is None

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"dim_range": (0, 4)},
            {"dim_range": (5, 4)},
            {"dim_range": (2, 65)},
            {"cond_cap": 0.5},
            {"defect": "explode"},
            {"signature": (0, 0)},
            {"signature": (-1, 3)},
        ],
    )
    def test_rejects_bad_fields(self, kwargs):
        with pytest.raises(ValueError):
            GenSpec(seed=1, **kwargs)

    def test_unit_cond_cap_allowed(self):
        GenSpec(seed=1, cond_cap=1.0)


class TestGenMetric:
    def test_requested_inertia(self):
        metric = gen_metric(GenSpec(seed=3, signature=(1, 1)))
        lam = np.linalg.eigvalsh(metric.G)
        assert (lam > 0).sum() == 1 and (lam < 0).sum() == 1

    def test_definite_signature_is_pure_hilbert(self):
        metric = gen_metric(GenSpec(seed=4, signature=(3, 0)))
        assert np.linalg.eigvalsh(metric.G).min() > 0

    def test_eigenvalue_magnitudes_in_band(self):
        for seed in range(10):
            metric = gen_metric(GenSpec(seed=seed, signature=(2, 2)))
            mags = np.abs(np.linalg.eigvalsh(metric.G))
            assert np.all((0.1 <= mags) & (mags <= 10.0))

    def test_same_seed_bitwise_identical(self):
        a = gen_metric(GenSpec(seed=99))
        b = gen_metric(GenSpec(seed=99))
        assert a.G.tobytes() == b.G.tobytes()

    def test_dimension_respects_range(self):
        for seed in range(20):
            metric = gen_metric(GenSpec(seed=seed, dim_range=(3, 5)))
            assert 3 <= metric.dim <= 5


class TestGenOperatorPair:
    def test_unit_cap_forces_unitary(self):
        spec = GenSpec(seed=5, signature=(2, 1), cond_cap=1.0)
        metric = gen_metric(spec)
        fd = fundamental_decomposition(metric)
        ops = gen_operator_pair(spec, fd)
        gram = ops.u_plus.conj().T @ ops.u_plus
        scale = gram[0, 0].real
        assert np.allclose(gram, scale * np.eye(2), atol=1e-12)

    def test_empty_part(self):
        spec = GenSpec(seed=6, signature=(0, 3))
        metric = gen_metric(spec)
        fd = fundamental_decomposition(metric)
        ops = gen_operator_pair(spec, fd)
        assert ops.u_plus.shape == (0, 0)
        assert ops.u_minus.shape == (3, 3)

    @pytest.mark.parametrize("cap", [1.0, 10.0, 1e4])
    def test_condition_number_within_cap(self, cap):
        for seed in range(10):
            spec = GenSpec(seed=seed, signature=(3, 2), cond_cap=cap)
            metric = gen_metric(spec)
            fd = fundamental_decomposition(metric)
            ops = gen_operator_pair(spec, fd)
            assert ops.norm_plus * ops.inv_norm_plus <= cap * (1 + 1e-12)
            assert ops.norm_minus * ops.inv_norm_minus <= cap * (1 + 1e-12)

    def test_deterministic(self):
        spec = GenSpec(seed=7, signature=(2, 2))
        metric = gen_metric(spec)
        fd = fundamental_decomposition(metric)
        a = gen_operator_pair(spec, fd)
        b = gen_operator_pair(spec, fd)
        assert a.u_plus.tobytes() == b.u_plus.tobytes()
        assert a.u_minus.tobytes() == b.u_minus.tobytes()


class TestGenRieszInstance:
    def test_bundles_a_valid_certificate(self):
        from krein import gen_riesz_instance

        metric, fd, cert = gen_riesz_instance(GenSpec(seed=13))
        assert fd.metric is metric
        assert cert.family.size == metric.dim
        assert riesz_via_gram(cert.family).is_riesz


class TestGenDefectiveFamily:
    @pytest.mark.parametrize("defect", DEFECTS)
    def test_expected_reason_is_reported(self, defect):
        for seed in range(5):
            spec = GenSpec(seed=seed, signature=(2, 2), defect=defect)
            metric = gen_metric(spec)
            fd = fundamental_decomposition(metric)
            fam, expected = gen_defective_family(spec, metric, fd)
            verdict = riesz_via_gram(fam)
            assert not verdict.is_riesz
            assert verdict.failure_reason is expected

    def test_requires_a_defect(self):
        spec = GenSpec(seed=1, signature=(1, 1))
        metric = gen_metric(spec)
        fd = fundamental_decomposition(metric)
        with pytest.raises(DefectImpossible):
            gen_defective_family(spec, metric, fd)

    def test_drop_impossible_in_dimension_one(self):
        spec = GenSpec(seed=1, signature=(1, 0), defect="drop_vector")
        metric = gen_metric(spec)
        fd = fundamental_decomposition(metric)
        with pytest.raises(DefectImpossible):
            gen_defective_family(spec, metric, fd)

    @pytest.mark.parametrize("defect", ["neutral_inject", "mix_halves"])
    def test_two_part_defects_need_both_parts(self, defect):
        spec = GenSpec(seed=2, signature=(2, 0), defect=defect)
        metric = gen_metric(spec)
        fd = fundamental_decomposition(metric)
        with pytest.raises(DefectImpossible):
            gen_defective_family(spec, metric, fd)

    def test_neutral_injection_classifies_plus_and_flags(self):
        # the injected vector has a vanishing self-product: by the >= 0
        # convention it lands in the plus class and raises the neutral flag
        spec = GenSpec(seed=8, signature=(1, 1), defect="neutral_inject")
        metric = gen_metric(spec)
        fd = fundamental_decomposition(metric)
        fam, _ = gen_defective_family(spec, metric, fd)
        injected = fam.size - 1
        assert injected in fam.i_plus
        assert injected in fam.neutral
        self_product = indefinite_inner(fam.vector(injected), fam.vector(injected), metric)
        assert abs(self_product) <= 1e-10

    def test_drop_shrinks_family(self):
        spec = GenSpec(seed=9, signature=(2, 1), defect="drop_vector")
        metric = gen_metric(spec)
        fd = fundamental_decomposition(metric)
        fam, reason = gen_defective_family(spec, metric, fd)
        assert fam.size == 2
        assert reason.value.startswith("incomplete")

    def test_duplicate_grows_family(self):
        spec = GenSpec(seed=10, signature=(2, 1), defect="duplicate_vector")
        metric = gen_metric(spec)
        fd = fundamental_decomposition(metric)
        fam, reason = gen_defective_family(spec, metric, fd)
        assert fam.size == 4
        assert reason.value.startswith("gram_singular")

    def test_mix_halves_keeps_plus_class(self):
        spec = GenSpec(seed=11, signature=(2, 2), defect="mix_halves")
        metric = gen_metric(spec)
        fd = fundamental_decomposition(metric)
        fam, _ = gen_defective_family(spec, metric, fd)
        # same index split as the clean family, but membership now fails
        assert len(fam.i_plus) == 2 and len(fam.i_minus) == 2
        from krein import subspace_membership

        assert not np.all(subspace_membership(fam))

    def test_deterministic(self):
        spec = GenSpec(seed=12, signature=(2, 2), defect="mix_halves")
        metric = gen_metric(spec)
        fd = fundamental_decomposition(metric)
        a, _ = gen_defective_family(spec, metric, fd)
        b, _ = gen_defective_family(spec, metric, fd)
        assert a.vectors.tobytes() == b.vectors.tobytes()
