"""Pure numpy implementations of the hot kernels.

Bit-compatible with the compiled backend on the integer RNG stream; the
matrix kernels agree up to floating-point reassociation.
"""

import numpy as np

_MASK = (1 << 64) - 1
_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)


def splitmix64_words(seed: int, start: int, count: int) -> np.ndarray:
    """Words ``start .. start+count-1`` of the splitmix64 stream for ``seed``.

    Word ``i`` is ``mix(seed + (i+1) * 0x9E3779B97F4A7C15)`` with the standard
    splitmix64 finalizer, all in wrapping 64-bit arithmetic. The stream is
    counter-based: any window can be generated without stepping through the
    words before it.
    """
    idx = np.arange(1, count + 1, dtype=np.uint64) + np.uint64(start & _MASK)
    z = np.uint64(seed & _MASK) + idx * _GAMMA
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


def pairwise_form(f: np.ndarray, g: np.ndarray, other: np.ndarray | None = None) -> np.ndarray:
    """Matrix of indefinite products between two vector families.

    Entry ``(i, j)`` is the product of column ``i`` of ``f`` against column
    ``j`` of ``other`` (default ``f``), linear in the first slot and
    conjugate-linear in the second, weighted by the metric matrix ``g``.
    """
    if other is None:
        other = f
    return (other.conj().T @ (g @ f)).T


def batch_analysis(f: np.ndarray, g: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Coefficient matrix ``a[r, s]`` = product of sample ``x[:, s]`` against
    family vector ``f[:, r]`` under the metric ``g``."""
    return f.conj().T @ (g @ x)
