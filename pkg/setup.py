from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "netloc._sweep_c",
                ["src/netloc/_sweep_c.pyx"],
                optional=True,
                extra_compile_args=["-O2"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # No Cython: the pure-Python sweep is used instead.
    ext_modules = []

setup(ext_modules=ext_modules)
