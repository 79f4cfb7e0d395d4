import numpy as np
import pytest

from krein.errors import EmptyMatrix, NonSquare, NotHermitian, Singular
from krein.numerics import (
    Tolerances,
    hermitian_eig,
    invert,
    numeric_rank,
    singular_extremes,
)

from conftest import random_hermitian, random_invertible_hermitian

GOLDEN_RATIO = (1.0 + np.sqrt(5.0)) / 2.0


class TestTolerances:
    def test_defaults(self):
        t = Tolerances()
        assert t.rank_tol == 1e-10
        assert t.sym_tol == 1e-10
        assert t.recon_tol == 1e-8

    @pytest.mark.parametrize("bad", [0.0, -1e-3, 1.0, 2.0])
    def test_rejects_out_of_range(self, bad):
        with pytest.raises(ValueError):
            Tolerances(rank_tol=bad)


class TestHermitianEig:
    def test_diagonal_indefinite(self):
        w, v = hermitian_eig(np.diag([1.0, -1.0]).astype(complex))
        assert np.allclose(w, [-1.0, 1.0])
        # eigenvectors of a diagonal matrix are coordinate directions
        assert np.allclose(np.abs(v), [[0, 1], [1, 0]])

    def test_identity(self):
        w, _ = hermitian_eig(np.eye(3, dtype=complex))
        assert np.allclose(w, [1.0, 1.0, 1.0])

    def test_swap_matrix(self):
        w, _ = hermitian_eig(np.array([[0, 1], [1, 0]], dtype=complex))
        assert np.allclose(w, [-1.0, 1.0], atol=1e-14)

    def test_rejects_non_square(self):
        with pytest.raises(NonSquare):
            hermitian_eig(np.ones((2, 3), dtype=complex))

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitian):
            hermitian_eig(np.array([[0, 1], [0, 0]], dtype=complex))

    @pytest.mark.parametrize("seed", range(5))
    def test_residual_and_orthonormality(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, 13))
        a = random_hermitian(rng, n)
        w, v = hermitian_eig(a)
        scale = np.linalg.norm(a, 2)
        assert np.linalg.norm(a @ v - v * w, axis=0).max() <= 1e-12 * scale
        assert np.allclose(v.conj().T @ v, np.eye(n), atol=1e-13)
        assert np.all(np.diff(w) >= 0)

    @pytest.mark.parametrize("seed", range(8))
    def test_reconstruction_from_pairs(self, seed):
        rng = np.random.default_rng(100 + seed)
        a = random_hermitian(rng, int(rng.integers(1, 13)))
        w, v = hermitian_eig(a)
        rebuilt = (v * w) @ v.conj().T
        assert np.linalg.norm(rebuilt - a, 2) <= 1e-10 * max(np.linalg.norm(a, 2), 1e-300)


class TestSingularExtremes:
    def test_diagonal(self):
        assert singular_extremes(np.diag([2.0, 1.0]).astype(complex)) == (1.0, 2.0)

    def test_identity(self):
        assert singular_extremes(np.eye(4, dtype=complex)) == (1.0, 1.0)

    def test_shear_is_golden(self):
        # singular values of [[1,1],[0,1]]: roots of s^4 - 3 s^2 + 1
        smin, smax = singular_extremes(np.array([[1, 1], [0, 1]], dtype=complex))
        assert smax == pytest.approx(GOLDEN_RATIO, rel=1e-14)
        assert smin == pytest.approx(GOLDEN_RATIO - 1.0, rel=1e-14)
        assert smin * smax == pytest.approx(1.0, rel=1e-14)
        assert smin**2 + smax**2 == pytest.approx(3.0, rel=1e-14)

    def test_rejects_empty(self):
        with pytest.raises(EmptyMatrix):
            singular_extremes(np.zeros((0, 3), dtype=complex))

    @pytest.mark.parametrize("seed", range(5))
    def test_inverse_swaps_extremes(self, seed):
        rng = np.random.default_rng(200 + seed)
        a = random_invertible_hermitian(rng, int(rng.integers(1, 13)))
        smin, _ = singular_extremes(a)
        _, smax_inv = singular_extremes(invert(a))
        assert smax_inv * smin == pytest.approx(1.0, rel=1e-10)


class TestNumericRank:
    def test_identity(self):
        assert numeric_rank(np.eye(5, dtype=complex)) == 5

    def test_repeated_column(self):
        col = np.array([[1.0], [2.0], [3.0]], dtype=complex)
        assert numeric_rank(np.hstack([col, col])) == 1

    def test_dependent_rows(self):
        a = np.array([[1, 0, 0], [0, 1, 0], [1, 1, 0]], dtype=complex)
        assert numeric_rank(a) == 2

    def test_zero_matrix(self):
        assert numeric_rank(np.zeros((3, 3), dtype=complex)) == 0

    def test_rejects_empty(self):
        with pytest.raises(EmptyMatrix):
            numeric_rank(np.zeros((0, 0), dtype=complex))

    @pytest.mark.parametrize("seed", range(5))
    def test_invariant_under_well_conditioned_factor(self, seed):
        rng = np.random.default_rng(300 + seed)
        n, r = 8, int(rng.integers(1, 8))
        a = (rng.standard_normal((n, r)) + 1j * rng.standard_normal((n, r))) @ (
            rng.standard_normal((r, n)) + 1j * rng.standard_normal((r, n))
        )
        # well-conditioned factor: singular values compressed into [1, 10]
        z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        u, s, vh = np.linalg.svd(z)
        m = (u * (1.0 + 9.0 * s / s.max())) @ vh
        assert numeric_rank(m @ a) == numeric_rank(a) == r


class TestInvert:
    def test_scalar(self):
        assert np.allclose(invert(np.array([[2.0]], dtype=complex)), [[0.5]])

    def test_identity(self):
        assert np.allclose(invert(np.eye(3, dtype=complex)), np.eye(3))

    def test_two_by_two(self):
        a = np.array([[2, 1], [1, 1]], dtype=complex)
        assert np.allclose(invert(a), [[1, -1], [-1, 2]], atol=1e-14)

    def test_rejects_singular(self):
        with pytest.raises(Singular) as info:
            invert(np.ones((2, 2), dtype=complex))
        assert info.value.sigma_min <= 1e-12

    def test_rejects_non_square(self):
        with pytest.raises(NonSquare):
            invert(np.ones((2, 3), dtype=complex))

    @pytest.mark.parametrize("seed", range(5))
    def test_residual(self, seed):
        rng = np.random.default_rng(400 + seed)
        a = random_invertible_hermitian(rng, int(rng.integers(1, 13)))
        smin, smax = singular_extremes(a)
        resid = np.linalg.norm(a @ invert(a) - np.eye(a.shape[0]), 2)
        assert resid <= 1e-10 * (smax / smin)
