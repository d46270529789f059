import setuptools

with open("README.md", encoding='utf-8') as f:
    long_description = f.read()

version = {}
with open('torsionlab/version.py') as fp:
    exec(fp.read(), version)

setuptools.setup(
    name="torsionlab",
    description="torsionlab - non-pointed torsion theories on finite structures",
    version=version['__version__'],
    license="MIT",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=["torsionlab"],
    classifiers=[
        "Development Status :: 3 - Alpha",
        "License :: OSI Approved :: MIT License",
        "Environment :: Console",
        "Natural Language :: English",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Intended Audience :: Education",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    keywords=["category theory", "torsion theory", "universal algebra", "MV-algebra", "Heyting algebra", "galois"],
    python_requires=">=3.8",
    install_requires=[
        "networkx>=2.0",
        "pydantic>=2.0",
        "rich>=10.7"
    ],
    extras_require={
        "xxhash": ["xxhash>=2.0.0"]
    },
    entry_points={
        "console_scripts": ["torsionlab=torsionlab.lab:main"],
    },
    package_data={
        "torsionlab": ["py.typed"],
    },
)
