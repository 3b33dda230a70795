"""Build script: compiles the optional Cython kernel vizing._speedups.

The package is fully functional without the extension (the pure-Python
kernel is selected at import time); the extension only accelerates the
hot loops. `pip install -e . --no-build-isolation` builds it in place.
"""

import os

import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None and os.path.exists("src/vizing/_speedups.pyx"):
    ext_modules = cythonize(
        [
            Extension(
                "vizing._speedups",
                ["src/vizing/_speedups.pyx"],
                extra_compile_args=["-O3"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
