from setuptools import find_packages, setup


with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

setup(
    name="twistor-kepler",
    version="0.1.0",
    author="twistor-kepler contributors",
    description="Regularized Kepler dynamics on twistor space: momentum maps, KS and Cayley regularizations, integrable perturbations",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests", "tests.*"]),
    py_modules=["main"],
    install_requires=[
        "pydantic~=2.10.4",
        "pydantic_core>=2.27.2,<2.28.0",
        "loguru~=0.7.3",
        "numpy>=1.26",
        "scipy>=1.11",
        "sympy>=1.12",
        "tomli>=1.1; python_version < '3.11'",
    ],
    extras_require={
        "test": [
            "pytest~=8.3.5",
            "hypothesis>=6.100",
        ],
    },
    classifiers=[
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.12",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
    ],
    python_requires=">=3.10",
    entry_points={
        "console_scripts": [
            "twistor-kepler=main:main",
        ],
    },
)
