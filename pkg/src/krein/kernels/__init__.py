"""Hot numeric kernels with a compiled core and a pure numpy fallback.

The compiled backend (`krein.kernels._speedups`, built from Cython) is
selected at import when available; set ``KREIN_PURE_PYTHON=1`` to force the
numpy fallback. Both backends produce bit-identical RNG word streams; the
matrix kernels agree up to floating-point reassociation (~1e-15 relative).

``python benchmarks/bench_kernels.py`` in the repository compares the two.
"""

import os

from . import _pure

if os.environ.get("KREIN_PURE_PYTHON", "").strip() not in ("", "0"):
    _impl = _pure
    BACKEND = "python"
else:
    try:
        from . import _speedups as _impl

        BACKEND = "compiled"
    except ImportError:
        _impl = _pure
        BACKEND = "python"

splitmix64_words = _impl.splitmix64_words
pairwise_form = _impl.pairwise_form
batch_analysis = _impl.batch_analysis

__all__ = ["BACKEND", "splitmix64_words", "pairwise_form", "batch_analysis"]
