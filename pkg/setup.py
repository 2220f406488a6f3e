"""Build hook for the optional compiled kernels.

The extension is a pure speedup: if Cython or a C compiler is missing the
install still succeeds and the package falls back to the NumPy/Python
kernels at import time (see sicf.backend).
"""

import sys

from setuptools import setup

ext_modules = []
cmdclass = {}

try:
    import numpy
    from Cython.Build import cythonize
    from setuptools import Extension
    from setuptools.command.build_ext import build_ext

    class optional_build_ext(build_ext):
        """Never fail the install over the extension."""

        def run(self):
            try:
                super().run()
            except Exception as exc:  # CCompilerError, missing toolchain, ...
                print(f"sicf: skipping compiled kernels ({exc})", file=sys.stderr)

        def build_extension(self, ext):
            try:
                super().build_extension(ext)
            except Exception as exc:
                print(f"sicf: skipping compiled kernels ({exc})", file=sys.stderr)

    ext_modules = cythonize(
        [
            Extension(
                "sicf._kernels",
                ["src/sicf/_kernels.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
    cmdclass = {"build_ext": optional_build_ext}
except ImportError as exc:
    print(f"sicf: building without compiled kernels ({exc})", file=sys.stderr)

setup(ext_modules=ext_modules, cmdclass=cmdclass)
