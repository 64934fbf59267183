from setuptools import Extension, setup
from Cython.Build import cythonize

# -ffp-contract=off keeps the compiled kernel bit-identical to the pure-NumPy
# fallback (no FMA fusion of a*b+c).
setup(
    ext_modules=cythonize(
        [
            Extension(
                "twopop._kernel",
                ["src/twopop/_kernel.pyx"],
                extra_compile_args=["-O3", "-ffp-contract=off"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
)
