# coding: utf-8
import os

import setuptools

import superbound


def main():
    setuptools.setup(
        name=superbound.__name__,
        version=superbound.__version__,
        description="Numerical verification of graded integrable structures",
        license="bsd-3-clause",
        python_requires=">= 3.7",
        keywords="super Yangian reflection equation quantum group Yang-Baxter",
        long_description_content_type="text/markdown",
        long_description=get_long_description(),
        zip_safe=True,
        packages=setuptools.find_packages(exclude=("*.tests", "tests")),
        classifiers=(
            "Programming Language :: Python :: 3.7",
            "Programming Language :: Python :: 3.8",
            "Programming Language :: Python :: 3.9",
            "Programming Language :: Python :: Implementation :: CPython",
            "Topic :: Scientific/Engineering :: Physics",
        ),
        install_requires=("numpy >= 1.17", "scipy >= 1.4"),
        setup_requires=("setuptools>=38.6.0",),
        entry_points={"console_scripts": ("superbound = superbound._cli:main",)},
    )


def get_long_description() -> str:
    with open(abs_path("README.md"), encoding="utf-8") as f:
        return f.read()


def abs_path(path: str) -> str:
    return os.path.join(os.path.abspath(os.path.dirname(__file__)), path)


if __name__ == "__main__":
    main()
