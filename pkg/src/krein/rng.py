"""Seedable random stream with a fully documented algorithm.

The generator is splitmix64: word ``i`` of the stream for a 64-bit seed ``s``
is ``mix(s + (i+1) * 0x9E3779B97F4A7C15)`` with the standard finalizer
(xor-shift 30, multiply 0xBF58476D1CE4E5B9, xor-shift 27, multiply
0x94D049BB133111EB, xor-shift 31). Variates are derived as follows:

* uniform in [0, 1): the top 53 bits of a word, ``(w >> 11) * 2**-53``;
* Gaussian: Box-Muller on consecutive uniform pairs ``(u1, u2)``,
  ``r = sqrt(-2 * log1p(-u1))``, ``theta = 2*pi*u2``, yielding
  ``r*cos(theta)`` then ``r*sin(theta)``; a request for an odd count
  consumes the full last pair and discards the spare variate;
* complex Gaussian: ``(g[2j] + 1j*g[2j+1]) / sqrt(2)`` so that
  ``E|z|^2 = 1``;
* integer in [0, n): ``floor(u * n)`` for ``n <= 2**53``.

Being counter-based, the stream supports random access and cheap derivation
of statistically independent child seeds.
"""

from __future__ import annotations

import math

import numpy as np

from . import kernels

_MASK = (1 << 64) - 1
_DERIVE_SALT = 0xD1B54A32D192ED03


def derive_seed(seed: int, stream: int) -> int:
    """Child seed number ``stream`` for a master ``seed``.

    Children are words of a salted splitmix64 stream, so distinct streams
    never overlap the data words drawn from ``seed`` itself.
    """
    return int(kernels.splitmix64_words((seed ^ _DERIVE_SALT) & _MASK, stream, 1)[0])


class SplitMix64:
    """Sequential view of the splitmix64 stream for one seed."""

    def __init__(self, seed: int):
        self.seed = seed & _MASK
        self._pos = 0

    def words(self, count: int) -> np.ndarray:
        """Next ``count`` raw 64-bit words."""
        out = kernels.splitmix64_words(self.seed, self._pos, count)
        self._pos += count
        return out

    def uniforms(self, count: int) -> np.ndarray:
        """Next ``count`` uniforms in [0, 1)."""
        return (self.words(count) >> np.uint64(11)).astype(np.float64) * 2.0**-53

    def gaussians(self, count: int) -> np.ndarray:
        """Next ``count`` standard normals (Box-Muller pairs)."""
        pairs = (count + 1) // 2
        u = self.uniforms(2 * pairs).reshape(pairs, 2)
        r = np.sqrt(-2.0 * np.log1p(-u[:, 0]))
        theta = (2.0 * math.pi) * u[:, 1]
        out = np.empty(2 * pairs)
        out[0::2] = r * np.cos(theta)
        out[1::2] = r * np.sin(theta)
        return out[:count]

    def complex_gaussians(self, count: int) -> np.ndarray:
        """Next ``count`` standard complex normals (unit second moment)."""
        g = self.gaussians(2 * count)
        return (g[0::2] + 1j * g[1::2]) / math.sqrt(2.0)

    def integer(self, n: int) -> int:
        """Uniform integer in [0, n)."""
        if not 0 < n <= 2**53:
            raise ValueError(f"integer range must be in [1, 2**53], got {n}")
        return int(self.uniforms(1)[0] * n)
