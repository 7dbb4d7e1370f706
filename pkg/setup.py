from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

extensions = [
    Extension(
        "hyperrank._kernels._ckernels",
        ["src/hyperrank/_kernels/_ckernels.pyx"],
        extra_compile_args=["-O3"],
    )
]
for ext in extensions:
    # the package falls back to the NumPy kernels if this build fails
    ext.optional = True

setup(
    ext_modules=cythonize(extensions, language_level="3") if cythonize else [],
)
