"""Builds the optional compiled kernel.

The package is pure Python by default.  When Cython is available the hot
term-dictionary kernels are compiled; otherwise the pure-Python fallback in
``higgspec._core_py`` is used at import time.  Build in place with

    python setup.py build_ext --inplace

Set HIGGSPEC_NO_EXT=1 to skip the extension entirely.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("HIGGSPEC_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/higgspec/_core.pyx"],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
