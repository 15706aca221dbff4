import os

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

EIGEN_INCLUDE = os.environ.get("EIGEN_INCLUDE", "/usr/include/eigen3")

ext = Pybind11Extension(
    "zenodyn._core",
    [
        "src/model.cpp",
        "src/analytic.cpp",
        "src/oracles.cpp",
        "src/zeno.cpp",
        "src/run.cpp",
        "src/py/module.cpp",
    ],
    include_dirs=["include", "vendor", EIGEN_INCLUDE],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
