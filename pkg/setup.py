#                 Decentralized Stiefel Optimization (destiny)
#
# Copyright 2022 The destiny developers
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

from setuptools import find_packages, setup

# Get version without importing the package
version_ns = {}
with open("destiny/_version.py", "r", encoding="utf-8") as file:
    exec(file.read(), version_ns)

# Get long description
with open("README.md", "r", encoding="utf-8") as file:
    long_description = file.read()


setup(
    name="destiny",
    version=version_ns["get_versions"]()["version"],
    description=(
        "Simulator of decentralized optimization over the Stiefel manifold."
    ),
    long_description=long_description,
    long_description_content_type="text/markdown",
    license="Apache 2.0",
    author="The destiny developers",
    packages=find_packages(include=["destiny", "destiny.*"]),
    package_data={"destiny": ["tests/*.*", "tests/helper/*.py"]},
    include_package_data=True,
    zip_safe=False,
    python_requires=">=3.8",
    install_requires=[
        "numpy",
        "scipy",
    ],
    extras_require={
        "coverage": ["pytest", "pytest-cov", "coverage", "tomli"],
    },
    entry_points={
        "console_scripts": ["destiny=destiny.__main__:main"],
    },
    keywords="destiny",
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
    ],
)
