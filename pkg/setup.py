"""Build script.

The compiled kernel module mcilp._core is optional: when Cython or a C
compiler is unavailable the package falls back to the pure-Python twin
mcilp._core_py at import time, so build failures here are non-fatal.
"""

import os

from setuptools import Extension, setup


def extensions():
    if os.environ.get("MCILP_SKIP_EXT"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension("mcilp._core", sources=["src/mcilp/_core.pyx"])
    return cythonize([ext], compiler_directives={"language_level": 3})


setup(ext_modules=extensions())
