import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("spheremin._kernels", ["src/spheremin/_kernels.pyx"])],
        language_level=3,
    )
except ImportError:
    # Pure-python kernels are selected at import time when the
    # extension is unavailable.
    ext_modules = []

setup(
    ext_modules=ext_modules,
    include_dirs=[numpy.get_include()],
)
