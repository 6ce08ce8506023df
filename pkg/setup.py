"""Build script: compiles the optional native kernel extension.

The package works without the extension (a pure-Python backend is selected
at import time), so any Cython or compiler failure downgrades to a
pure-Python install instead of aborting.
"""

import os
import sys

from setuptools import setup

ext_modules = []
if os.environ.get("DESKPULSE_SKIP_NATIVE", "") not in ("1", "true", "yes"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "deskpulse.kernels._native",
                    ["src/deskpulse/kernels/_native.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        print("deskpulse: Cython not available, building pure-Python only", file=sys.stderr)

setup(ext_modules=ext_modules)
