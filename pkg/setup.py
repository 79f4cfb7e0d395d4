"""Build script: compiles the optional speedup extension.

Set KREIN_NO_EXT=1 to skip the extension entirely; the package then runs
on the pure numpy kernel backend.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("KREIN_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "krein.kernels._speedups",
                    ["src/krein/kernels/_speedups.pyx"],
                )
            ],
            language_level="3",
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
