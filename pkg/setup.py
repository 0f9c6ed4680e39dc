import numpy as np
from setuptools import setup, Extension

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "braesslab._ballsearch_cy",
                ["src/braesslab/_ballsearch_cy.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    # Pure-python fallback is selected at import time, so the build may
    # proceed without Cython.
    ext_modules = []

setup(ext_modules=ext_modules)
