"""Build script for the optional compiled bitset kernel.

The package is pure Python plus one Cython extension holding the hot
bit-matrix loops.  If Cython or a C compiler is missing the build falls
back to the pure-Python kernel transparently: the extension is optional.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Build the extension if possible, otherwise warn and continue."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing entirely
            self._skip(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._skip(exc)

    def _skip(self, exc):
        print("warning: compiled kernel not built (%s); "
              "the pure-Python fallback will be used" % exc)


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("warning: Cython not available, skipping compiled kernel")
        return []
    ext = Extension(
        "geomsieve._kernels._bitops",
        ["src/geomsieve/_kernels/_bitops.pyx"],
    )
    return cythonize(
        [ext],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
        },
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})
