"""Build script for the optional compiled kernels.

The package works without the extension (a NumPy fallback is selected at
import time), so the build is marked optional and any compiler failure is
non-fatal.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    import numpy

    extensions = cythonize(
        [
            Extension(
                "citefit._kernels",
                ["src/citefit/_kernels.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                optional=True,
            )
        ],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
else:
    extensions = []

setup(ext_modules=extensions)
