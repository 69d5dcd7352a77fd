import glob
import os

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup


def eigen_include():
    candidates = [
        os.environ.get("EIGEN3_INCLUDE_DIR"),
        "/usr/include/eigen3",
        "/usr/local/include/eigen3",
    ]
    for cand in candidates:
        if cand and os.path.isdir(cand):
            return cand
    raise RuntimeError("Eigen headers not found; set EIGEN3_INCLUDE_DIR")


sources = [p for p in sorted(glob.glob("src/*.cpp")) if not p.endswith("main.cpp")]
sources.append("bindings/module.cpp")

ext = Pybind11Extension(
    "pyentsub",
    sources,
    include_dirs=["include", "vendor", eigen_include()],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
