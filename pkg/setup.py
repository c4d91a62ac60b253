"""Build script for the optional compiled search kernel.

The package works without the extension (a pure-Python kernel is selected at
import time), so a failed build of the .pyx module is downgraded to a warning.
"""

import warnings

from setuptools import setup

try:
    from Cython.Build import cythonize
    from setuptools import Extension

    extensions = cythonize(
        [
            Extension(
                "catramsey._kernel",
                ["src/catramsey/_kernel.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    warnings.warn(f"compiled kernel disabled: {exc}")
    extensions = []

setup(ext_modules=extensions)
