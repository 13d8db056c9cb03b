from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "mncomplex._kernel._fastkern",
                ["src/mncomplex/_kernel/_fastkern.pyx"],
            )
        ],
        language_level="3",
    )
else:
    # The package falls back to the pure-Python kernel at import time.
    ext_modules = []

setup(ext_modules=ext_modules)
