"""Build script: compiles the optional Cython kernel extension.

The package is fully functional without the extension (a pure-Python twin of
every kernel is selected at import time), so any build failure here downgrades
to a warning instead of aborting the install.
"""
import sys

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "ordinarycircles._kernels",
                ["src/ordinarycircles/_kernels.pyx"],
            )
        ],
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
        },
    )
except Exception as exc:  # pragma: no cover
    sys.stderr.write(f"warning: Cython kernels not built ({exc}); using pure-Python fallback\n")
    ext_modules = []

setup(ext_modules=ext_modules)
