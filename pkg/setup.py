"""Build the optional Cython jet kernel.

The package works without it (gl3schwarz._jetpure is a drop-in twin), so a
missing compiler or Cython only costs speed, never a failed install.
"""

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize
    from setuptools.extension import Extension

    ext_modules = cythonize(
        [
            Extension(
                "gl3schwarz._jetcore",
                ["src/gl3schwarz/_jetcore.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
