#!/usr/bin/env python

# Setup for mohavere
#
# Copyright (C) 2026 The mohavere authors
#
# This file is part of mohavere, colloquial Persian standardisation.
#
# mohavere is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# mohavere is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with mohavere. If not, see <http://www.gnu.org/licenses/gpl.html>.

from setuptools import setup  # type: ignore

with open('README.rst') as f:
    longDescription = f.read()

setup(name='mohavere',
      version='0.1.0',
      description='Colloquial Persian standardisation with rules, synthetic corpora, and phrase-based transduction',
      long_description=longDescription,
      url='https://pypi.org/project/mohavere/',
      author='The mohavere authors',
      license='License :: OSI Approved :: GNU General Public License v3 (GPLv3)',
      classifiers=['Development Status :: 3 - Alpha',
                   'Intended Audience :: Science/Research',
                   'Intended Audience :: Developers',
                   'Natural Language :: Persian',
                   'Programming Language :: Python :: 3.8',
                   'Programming Language :: Python :: 3.9',
                   'Programming Language :: Python :: 3.10',
                   'Topic :: Text Processing :: Linguistic'],
      python_requires='>=3.8',
      packages=['mohavere',
                'mohavere.scripts',
                ],
      include_package_data=True,
      package_data={'mohavere': ['py.typed', 'data/*.rules']},
      entry_points='''
        [console_scripts]
        mohavere=mohavere.scripts.mohavere:run
      ''',
      zip_safe=False,
      install_requires=["numpy >= 1.17.5", "pandas", "h5py >= 3.0", "joblib", "click >= 7.0", "sacrebleu >= 2.0", ],
      extra_requires={':python_version < 3.8': ['typing_extensions']})
