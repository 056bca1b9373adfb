import setuptools

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

setuptools.setup(
    name="symquiv",
    version="0.1.0",
    description="Semi-invariants and generic decompositions of symmetric quivers of tame type.",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=['symquiv'],
    include_package_data=True,
    exclude_package_data={'': ['tests']},
    python_requires=">=3.8",
    install_requires=['sympy>=1.12', 'numpy>=1.20.0', 'pandas>=1.3.0', 'ordered_set'],
    entry_points={'console_scripts': ['symquiv=symquiv.__main__:main']},
    classifiers=[
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Programming Language :: Python :: 3",
    ],
)
