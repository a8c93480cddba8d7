import os

from setuptools import setup

# The compiled counting kernel is optional: if Cython is unavailable (or
# PARTPAT_NO_EXT=1 is set), the package installs with the pure-Python
# kernel only and selects it at import time.
ext_modules = []
if os.environ.get("PARTPAT_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/partpat/_kernel.pyx"],
            language_level=3,
            compiler_directives={"boundscheck": False, "wraparound": False},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
