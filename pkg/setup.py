"""Build the optional compiled kernels.

The package works without them: ``avgenergy._core`` falls back to the
pure-Python kernels when the extension cannot be imported.
"""
import os

from setuptools import setup

ext_modules = []
if not os.environ.get("AVGENERGY_NO_EXT"):
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "avgenergy._core._kernels",
                    ["src/avgenergy/_core/_kernels.pyx"],
                    include_dirs=[np.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
