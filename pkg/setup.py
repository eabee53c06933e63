import os

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None and not os.environ.get("NODALIC_SKIP_EXT"):
    # optional=True: a failed compile falls back to the pure-Python kernel.
    ext_modules = cythonize(
        [
            Extension(
                "nodalic._rowred_cy",
                ["src/nodalic/_rowred_cy.pyx"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
