from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # no Cython: the package runs on the pure-Python kernels
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("sscosamp._kernels", ["src/sscosamp/_kernels.pyx"],
                   extra_compile_args=["-O3"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
