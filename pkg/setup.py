"""Build script: compiles the optional Cython join kernel.

Set LCA_ENTROPY_NO_EXT=1 to skip the extension entirely; the package then
runs on the pure numpy kernel.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("LCA_ENTROPY_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "lcaentropy._kernels._join_cy",
                    ["src/lcaentropy/_kernels/_join_cy.pyx"],
                    language="c++",
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # No Cython available: install pure-python only.
        ext_modules = []

setup(ext_modules=ext_modules)
