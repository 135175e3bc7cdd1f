"""Build script: compiles the optional Cython kernel extension.

Set MELEELITE_PURE=1 to skip the extension entirely; the package falls back
to the NumPy kernels at import time.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("MELEELITE_PURE", "0") != "1":
    try:
        import numpy
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/meleelite/nn/_kernels_cy.pyx"],
            compiler_directives={"language_level": "3"},
        )
        for ext in ext_modules:
            ext.include_dirs.append(numpy.get_include())
            ext.extra_compile_args = ["-O3"]
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
