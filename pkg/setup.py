"""Build script: compiles the optional scan kernel.

The package works without the extension (a pure-Python twin is selected at
import time), so any build failure downgrades to a warning.

    python setup.py build_ext --inplace
"""

import warnings

from setuptools import setup

try:
    from Cython.Build import cythonize
    from setuptools.extension import Extension

    extensions = cythonize(
        [Extension("zcsp._scan", ["src/zcsp/_scan.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    warnings.warn("Cython not available; installing with the pure-Python kernel only")
    extensions = []

setup(ext_modules=extensions)
