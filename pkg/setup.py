"""Build hook for the optional compiled kernels.

The package works without the extension (a numpy fallback is selected at
import time), so any build failure here downgrades to a pure-Python
install instead of aborting.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "nvortex._speedups",
                ["src/nvortex/_speedups.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build environment dependent
    print(f"building without compiled kernels: {exc}")

setup(ext_modules=ext_modules)
