"""Build the optional compiled kernels.

The package works without them: ``ermakov_susy.kernels`` falls back to the
pure-Python implementations when ``_kernels`` cannot be imported.

    python setup.py build_ext --inplace
"""
import os

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pragma: no cover - build without Cython
    cythonize = None

ext_modules = []
if cythonize is not None and not os.environ.get("ERMAKOV_SUSY_NO_EXT"):
    ext_modules = cythonize(
        [
            Extension(
                "ermakov_susy._kernels",
                ["src/ermakov_susy/_kernels.pyx"],
                extra_compile_args=["-O3"],
                libraries=["m"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
