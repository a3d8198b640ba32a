"""Build script: compiles the optional accelerated kernel extension.

The package is fully functional without the extension; if Cython or a C
compiler is unavailable, the build falls back to the pure-Python kernels
(gfaber._kernels_py) selected at import time.
"""

import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Build the extension if possible; warn and continue otherwise."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing / misconfigured
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        sys.stderr.write(
            "warning: accelerated kernels were not built (%s); "
            "falling back to the pure-Python implementation\n" % (exc,)
        )


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        sys.stderr.write(
            "warning: Cython not available; building without the "
            "accelerated kernels\n"
        )
        return []
    # -ffp-contract=off keeps the compiled kernels from fusing
    # multiply-adds, so results track the pure-Python twin to the last
    # couple of bits instead of drifting with the compiler's FMA choices.
    ext = Extension(
        "gfaber._kernels",
        ["src/gfaber/_kernels.pyx"],
        extra_compile_args=["-ffp-contract=off"],
    )
    return cythonize([ext], language_level="3")


setup(
    ext_modules=extensions(),
    cmdclass={"build_ext": optional_build_ext},
)
