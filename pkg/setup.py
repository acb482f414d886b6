import setuptools

with open("README.md", "r") as fh:
    long_description = fh.read()

setuptools.setup(
    name="hitcalc",
    version="0.0.1",
    description="Admissible monomial bases of the polynomial algebra over the mod 2 Steenrod algebra.",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=setuptools.find_packages(exclude=['examples', 'examples.*']),
    package_data={'hitcalc': ['data/*.txt']},
    install_requires=[
        'numpy',
        'pandas'
    ],
    entry_points={
        'console_scripts': ['hitcalc=hitcalc.cli:main'],
    },
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires='>=3.8',
)
