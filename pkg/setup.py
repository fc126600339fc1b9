"""Build script for the optional compiled eigensolver kernel.

The package works without the extension (a pure-Python kernel is selected at
import time), so a failed compile downgrades to a warning instead of aborting
the install.
"""

import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # pragma: no cover - degraded install path
            print(f"warning: compiled kernel skipped ({exc}); "
                  "falling back to the pure-Python eigensolver", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # pragma: no cover - degraded install path
            print(f"warning: building {ext.name} failed ({exc}); "
                  "falling back to the pure-Python eigensolver", file=sys.stderr)


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:  # pragma: no cover - degraded install path
        return []
    ext = Extension(
        "azrd.linalg._cyclic_jacobi",
        ["src/azrd/linalg/_cyclic_jacobi.pyx"],
        # -ffp-contract=off keeps the compiled kernel bitwise-identical to the
        # pure-Python fallback (no FMA contraction).
        extra_compile_args=["-O2", "-ffp-contract=off"],
    )
    return cythonize([ext], compiler_directives={"language_level": "3"})


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})
