# Copyright (c) 2026 The critset developers. All rights reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import os
from glob import glob

from setuptools import setup


def load_description(filename):
    script_dir = os.path.abspath(os.path.dirname(__file__))
    with open(os.path.join(script_dir, filename), "r") as infile:
        return infile.read()


setup(
    name="critset",
    version="0.1.0",
    description="Criterion sets, truants and escalation witnesses for quadratic forms over Q and real quadratic fields",
    long_description=load_description("README.md"),
    long_description_content_type="text/markdown",
    license="Apache License 2.0",
    packages=["critset"],
    python_requires=">=3.8",
    install_requires=["numpy>=1.8.0", "sympy>=1.9", "bjdata>=0.5"],
    extras_require={"dev": ["coverage>=4.5.3", "mpmath>=1.2", "jsonschema>=3.2"]},
    data_files=[("share/critset/schemas", sorted(glob("schemas/*.json")))],
    entry_points={"console_scripts": ["critset=critset.__main__:main"]},
    zip_safe=False,
    keywords=[
        "quadratic forms",
        "universal forms",
        "criterion set",
        "truant",
        "escalation",
        "real quadratic fields",
        "number theory",
    ],
    classifiers=[
        "Development Status :: 3 - Alpha",
        "License :: OSI Approved :: Apache Software License",
        "Intended Audience :: Science/Research",
        "Programming Language :: Python",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Programming Language :: Python :: 3.13",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
)
