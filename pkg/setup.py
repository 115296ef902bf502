from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # Source installs without Cython fall back to the numpy sweep kernel.
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "susyqm._jacobi",
                ["src/susyqm/_jacobi.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
