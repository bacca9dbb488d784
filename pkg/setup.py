"""Build script: compiles the persistence reduction kernel when Cython and a
C++ toolchain are available.  The package works without the extension (a pure
Python kernel is selected at import time), so any build failure here is
non-fatal by design: fall back to a pure-Python install.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "tightrips._reduction",
                ["src/tightrips/_reduction.pyx"],
                language="c++",
                extra_compile_args=["-O2", "-std=c++17"],
            )
        ],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
