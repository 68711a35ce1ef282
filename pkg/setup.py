"""
Builds the optional compiled minimax kernel:

    pip install -e . --no-build-isolation

If Cython or a C++ compiler is missing the package still installs and falls
back to ``incidence._kernel_py``.
"""
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

extensions = []
if cythonize is not None:
    extensions = cythonize(
        [
            Extension(
                "incidence._kernel",
                ["src/incidence/_kernel.pyx"],
                language="c++",
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
    for ext in extensions:
        ext.optional = True

setup(ext_modules=extensions)
