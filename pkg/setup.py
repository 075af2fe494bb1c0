import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("THETAKIT_NO_EXT", "") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:  # fall back to the pure-Python kernels
        pass
    else:
        ext_modules = cythonize(
            [Extension("thetakit._kernels", ["src/thetakit/_kernels.pyx"], extra_compile_args=["-O3"])],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
