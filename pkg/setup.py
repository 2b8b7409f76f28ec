import os

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None and not os.environ.get("FEMTOSIM_PURE_BUILD"):
    # -ffp-contract=off keeps the compiled kernels bit-identical to the
    # pure-Python fallback (no fused multiply-add surprises).
    ext_modules = cythonize(
        [
            Extension(
                "femtosim.kernels._native",
                ["src/femtosim/kernels/_native.pyx"],
                extra_compile_args=["-O3", "-ffp-contract=off"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
