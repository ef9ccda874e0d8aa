import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

# -ffp-contract=off: the compiled engine must match the pure-Python one
# bit for bit, so the compiler may not fuse multiply-adds.
extensions = [
    Extension(
        "polisim._kernels",
        ["src/polisim/_kernels.pyx"],
        include_dirs=[np.get_include()],
        extra_compile_args=["-O2", "-ffp-contract=off"],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
]

if cythonize is not None:
    ext_modules = cythonize(extensions, compiler_directives={"language_level": "3"})
else:
    # The package still works without the extension; the pure-Python
    # engine is selected at import time.
    ext_modules = []

setup(ext_modules=ext_modules)
