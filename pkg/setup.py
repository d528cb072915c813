import os

from setuptools import setup

ext_modules = []
if not os.environ.get("EXCYCLES_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            "src/excycles/exactlin/_kernels.pyx",
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
