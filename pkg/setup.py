import numpy
from setuptools import Extension, setup

# The exhaustive wedge scan has a compiled kernel; the package falls back to
# the numpy kernel at import time if the extension is missing.
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "cuspcodes._scan",
                ["src/cuspcodes/_scan.pyx"],
                extra_compile_args=["-O3"],
                include_dirs=[numpy.get_include()],
            )
        ],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
