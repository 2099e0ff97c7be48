#!/usr/bin/env python
# -*- coding: utf-8 -*-
import setuptools
import os
# get __version__ from _version.py
ver_file = os.path.join('pdeform', '_version.py')

with open(ver_file) as f:
    exec(f.read())

DISTNAME = 'pdeform'

INSTALL_REQUIRES = [i.strip() for i in open("requirements.txt").readlines()]

with open("README.md", "r") as fh:
    long_description = fh.read()

VERSION = __version__

setuptools.setup(
    name=DISTNAME,
    version=VERSION,
    description="Exact-arithmetic deformation theory of Poisson maps",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=setuptools.find_packages(exclude=['docs', 'example', 'examples', 'build', 'dist',
                                               'venv', 'pdeform.egg-info']),
    package_dir={DISTNAME: 'pdeform'},
    package_data={'pdeform.experiments': ['config/*.scn']},
    entry_points={'console_scripts': ['pdeform = pdeform.experiments.run_command:main']},
    setup_requires=['sphinx>=2.1.2'],
    install_requires=INSTALL_REQUIRES,
    classifiers=[
        "Programming Language :: Python :: 3.6",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
)
