import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("WREATHCONJ_PURE") != "1" and os.path.exists(
    "src/wreathconj/_speedups.pyx"
):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "wreathconj._speedups",
                    ["src/wreathconj/_speedups.pyx"],
                )
            ],
            language_level=3,
        )
    except ImportError:
        # No Cython available: the package falls back to the pure kernel.
        ext_modules = []

setup(ext_modules=ext_modules)
