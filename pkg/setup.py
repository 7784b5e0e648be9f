import os
import sys
import tempfile

import numpy
from setuptools import Extension, setup


def _openmp_flags():
    if os.environ.get("LEJAKIT_NO_OPENMP") or sys.platform == "darwin":
        return []
    from distutils.ccompiler import new_compiler
    from distutils.errors import CompileError, LinkError

    cc = new_compiler()
    with tempfile.TemporaryDirectory() as tmp:
        src = os.path.join(tmp, "omp.c")
        with open(src, "w") as fh:
            fh.write("#include <omp.h>\nint main(void){return omp_get_max_threads() > 0 ? 0 : 1;}\n")
        try:
            objs = cc.compile([src], output_dir=tmp, extra_postargs=["-fopenmp"])
            cc.link_executable(objs, os.path.join(tmp, "omp"), extra_postargs=["-fopenmp"])
        except (CompileError, LinkError):
            return []
    return ["-fopenmp"]


def _extensions():
    if os.environ.get("LEJAKIT_PURE_BUILD"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    omp = _openmp_flags()
    ext = Extension(
        "lejakit._kernels",
        sources=["src/lejakit/_kernels.pyx"],
        include_dirs=[numpy.get_include()],
        extra_compile_args=["-O3"] + omp,
        extra_link_args=omp,
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
    return cythonize([ext], compiler_directives={"language_level": 3})


setup(ext_modules=_extensions())
