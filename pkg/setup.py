import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("NGIT_NO_EXTENSION"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension("ngit.exactalg._kernels_c", ["src/ngit/exactalg/_kernels_c.pyx"])],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
