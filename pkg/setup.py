import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("FINRING_PURE") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("finring._speedups", ["src/finring/_speedups.pyx"])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # Pure-python fallback is selected at import time, so a missing
        # compiler toolchain only costs speed, not functionality.
        ext_modules = []

setup(ext_modules=ext_modules)
