# python setup.py build_ext --inplace
# The compiled DTW kernel is optional; without a compiler the package falls
# back to tsnet._dtw_py at import time.
import os

import numpy as np
from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("TSNET_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "tsnet._dtw_core",
                    ["src/tsnet/_dtw_core.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )

setup(ext_modules=ext_modules)
