"""Build script: compiles the optional bitset search core.

The package works without the extension (a pure-Python fallback is selected
at import time); building it makes the exhaustive and branch-and-bound
searches roughly an order of magnitude faster.  Set THETAGRID_SKIP_EXT=1 to
force a pure-Python install.
"""

import os

from setuptools import setup

ext_modules = []
if not os.environ.get("THETAGRID_SKIP_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/thetagrid/_speedups.pyx"],
            compiler_directives={
                "language_level": 3,
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
                "initializedcheck": False,
            },
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
