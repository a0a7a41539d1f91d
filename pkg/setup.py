"""Build hook for the optional compiled kernels.

If Cython or a C compiler is unavailable the extension is skipped and the
package falls back to the numpy kernels at import time.
"""

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("normderiv._ckernels", ["src/normderiv/_ckernels.pyx"],
                   include_dirs=[numpy.get_include()], optional=True,
                   define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")])],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
