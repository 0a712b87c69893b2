from setuptools import Extension, setup
from Cython.Build import cythonize

# -ffp-contract=off: the compiled kernels must be bit-identical to the pure
# Python backend; fused multiply-adds would change double rounding.
extensions = [
    Extension(
        "evo2048.engine._fast",
        ["src/evo2048/engine/_fast.pyx"],
        extra_compile_args=["-O3", "-ffp-contract=off"],
    )
]

setup(
    ext_modules=cythonize(
        extensions,
        compiler_directives={"language_level": "3"},
    )
)
