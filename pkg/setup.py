#!/usr/bin/env python
from setuptools import setup, find_packages


def readme():
    with open('README.rst') as desc:
        return desc.read()


setup(name='grmcweather',
      version='0.3.0',
      description='Graph-regularized matrix completion for weather '
                  'station networks.',
      long_description=readme(),
      author='grmcweather developers',
      url='http://github.com/grmcweather/grmcweather',
      license='GPLv2',
      install_requires=['numpy', 'scipy', 'pandas', 'scikit-learn',
                        'argcomplete'],
      package_dir={'': 'src'},
      packages=find_packages('src'),
      include_package_data=True,
      test_suite='tests',
      scripts=['cli/grmc-cli'],
      zip_safe=True,
      keywords="matrix completion graph laplacian weather imputation",
      classifiers=[
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering :: Atmospheric Science',
      ])
