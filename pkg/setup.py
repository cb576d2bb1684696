from setuptools import setup, find_packages

setup(
    name="george_cost",
    version="0.1.0",
    description="Minimum-cost factorizations into transpositions in the George groups",
    packages=find_packages(exclude=["tests", "tests.*"]),
    package_data={"george_cost": ["config.yaml"]},
    install_requires=[
        "pydantic>=2.0.0",
        "python-dotenv>=1.0.0",
        "pyyaml>=6.0",
        "rich>=13.6.0",
    ],
    extras_require={
        "test": ["pytest>=7.4.0", "pytest-asyncio>=0.21.1"],
    },
    entry_points={
        "console_scripts": ["george-cost=george_cost.cli:main"],
    },
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires=">=3.9",
)
