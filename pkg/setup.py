import numpy as np
from Cython.Build import cythonize
from setuptools import Extension, setup

# -O2 without -march: keeps the compiled kernels free of FMA contraction so
# their float results match the pure-Python backend bit for bit.
extensions = [
    Extension(
        "netgaps.kernels._core_cy",
        ["src/netgaps/kernels/_core_cy.pyx"],
        include_dirs=[np.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        extra_compile_args=["-O2"],
    )
]

setup(
    ext_modules=cythonize(
        extensions,
        compiler_directives={"language_level": "3"},
    )
)
