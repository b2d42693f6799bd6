#!/usr/bin/env python
# This file is part enetacl module.
# The COPYRIGHT file at the top level of this repository contains
# the full copyright notices and license terms.

from setuptools import setup
import os
import io
from configparser import ConfigParser


def read(fname):
    return io.open(
        os.path.join(os.path.dirname(__file__), fname),
        'r', encoding='utf-8').read()


config = ConfigParser()
config.read_string(read('enetacl.cfg'))
info = dict(config.items('enetacl'))
for key in ('depends', 'extras_depend'):
    if key in info:
        info[key] = info[key].strip().splitlines()
version = info.get('version', '0.0.1')
name = 'enetacl'

requires = info.get('depends', [])
tests_require = info.get('extras_depend', [])

setup(name=name,
    version=version,
    description='E-net access control policies by groups and security levels',
    long_description=read('README'),
    author='NaN-tic',
    author_email='info@nan-tic.com',
    keywords='access control, security levels, petri nets, audit',
    package_dir={'enetacl': '.'},
    packages=[
        'enetacl',
        'enetacl.tests',
        ],
    package_data={
        'enetacl': ['enetacl.cfg', 'tests/*.rst', 'tests/*.json'],
        },
    classifiers=[
        'Development Status :: 4 - Beta',
        'Environment :: Console',
        'Intended Audience :: Developers',
        'Intended Audience :: Information Technology',
        'License :: OSI Approved :: GNU General Public License (GPL)',
        'Natural Language :: English',
        'Operating System :: OS Independent',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
        'Topic :: Security',
        ],
    license='GPL-3',
    python_requires='>=3.9',
    install_requires=requires,
    extras_require={
        'test': tests_require,
        },
    zip_safe=False,
    entry_points="""
    [console_scripts]
    enetacl = enetacl.cli:main
    """,
    test_suite='tests',
    tests_require=tests_require,
    )
