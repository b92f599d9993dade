"""Build hook for the optional compiled kernels.

If Cython or a C compiler is unavailable the package installs without the
extension and ``gwafree.kernels`` falls back to pure Python.
"""
from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("gwafree._ckernels", ["src/gwafree/_ckernels.pyx"])],
        compiler_directives={"language_level": "3"},
        quiet=True,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
