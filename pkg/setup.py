from setuptools import setup, find_namespace_packages
from os import path

this_directory = path.abspath(path.dirname(__file__))
with open(path.join(this_directory, "README.md"), encoding="utf-8") as f:
    long_description = f.read()

requirements = [
    "numpy",
    "scipy",
    "pandas>=1.5",
    "sympy",
    "click",
    "numba",
    "rich",
    "pyinspect",
    "loguru",
    "fcutils",
    "myterial",
    "pyyaml",
]

setup(
    name="helmwave",
    version="0.1.0",
    description="Multilevel preconditioners for CIP-FEM Helmholtz problems",
    long_description=long_description,
    long_description_content_type="text/markdown",
    install_requires=requirements,
    extras_require={"dev": ["pytest", "pytest-cov"]},
    python_requires=">=3.8",
    packages=find_namespace_packages(include=("helmwave", "helmwave.*")),
    include_package_data=True,
    package_data={"helmwave.experiments": ["configs/*.yaml"]},
    zip_safe=False,
    entry_points={"console_scripts": ["helmwave=helmwave.cli:main"]},
)
