import numpy as np
import pytest

from krein import KreinMetric, Tolerances, fundamental_decomposition


@pytest.fixture
def minkowski():
    """The diag(1, -1) space: the smallest genuinely indefinite example."""
    metric = KreinMetric(np.diag([1.0, -1.0]).astype(complex))
    return metric, fundamental_decomposition(metric)


@pytest.fixture
def tol():
    return Tolerances()


def random_hermitian(rng: np.random.Generator, n: int) -> np.ndarray:
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (z + z.conj().T) / 2.0


def random_invertible_hermitian(rng: np.random.Generator, n: int, floor: float = 0.2) -> np.ndarray:
    """Random Hermitian matrix with all eigenvalue magnitudes >= floor."""
    h = random_hermitian(rng, n)
    lam, v = np.linalg.eigh(h)
    lam = np.where(np.abs(lam) < floor, floor * np.sign(lam + (lam == 0)), lam)
    return (v * lam) @ v.conj().T
