"""Build script for the optional compiled search kernels.

The package is fully functional without the extension (a pure-Python
fallback is selected at import time); building it is strongly recommended
because the exact solvers spend nearly all their time inside these kernels.
"""

from setuptools import setup

try:
    from Cython.Build import cythonize
    from setuptools import Extension

    extensions = cythonize(
        [
            Extension(
                "harmlesskit._core._ckernels",
                ["src/harmlesskit/_core/_ckernels.pyx"],
            )
        ],
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
