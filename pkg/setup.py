from setuptools import find_packages, setup

setup(
    name="knotalg",
    packages=find_packages(exclude=["tests", "tests.*"]),
    package_data={"src.data": ["*.csv"]},
    install_requires=[
        "numpy",
        "pandas",
        "tqdm",
        "sympy",
        "networkx",
        "Flask",
        "flask_cors",
    ],
    entry_points={"console_scripts": ["knotalg=src.cli:main"]},
)
