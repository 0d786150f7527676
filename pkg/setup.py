from setuptools import setup, find_packages

setup(
    name="cdspack",
    version="0.1.0",
    packages=find_packages(exclude=["tests", "tests.*"]),
    install_requires=[
        "networkx>=3.0",
        "numpy>=1.24.0",
        "typer>=0.9.0",
        "python-dotenv>=1.0.0",
        "pydantic>=2.0.0",
        "tabulate>=0.9.0",
    ],
    entry_points={
        "console_scripts": [
            "cdspack=cli.run_cli:app",
        ],
    },
    python_requires=">=3.8",
)
