"""Builds the optional compiled scoring kernel.

The package is fully functional without it; a vectorized numpy fallback is
selected at import time when the extension is absent.
"""

from setuptools import setup

ext_modules = []
try:
    import numpy as np
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "brisklab._kernels._cyscore",
                ["src/brisklab/_kernels/_cyscore.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # No Cython or numpy at build time: ship pure Python.
    pass

setup(ext_modules=ext_modules)
