"""Build script for the optional compiled tick kernel.

The package works without the extension (a pure-Python kernel is selected at
import time); building it just makes batch simulation faster.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "feintfight.engine._kernel_c",
                ["src/feintfight/engine/_kernel_c.pyx"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
