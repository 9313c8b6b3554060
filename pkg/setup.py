"""Build script: compiles the optional Cython kernel extension.

If the extension cannot be built the package still installs; the pure
Python kernels are selected at import time.
"""

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/optframe/kernels/_ckernels.pyx"],
        language_level=3,
    )
    include_dirs = [numpy.get_include()]
except Exception:  # pragma: no cover - cython/compiler missing
    include_dirs = []

for ext in ext_modules:
    ext.include_dirs = include_dirs

setup(ext_modules=ext_modules)
