from setuptools import setup, find_packages

setup(
  name = 'distrank',
  version = '1.0.0',
  packages = find_packages(exclude=['tests', 'tests.*']),
  install_requires = ['numpy>=1.22', 'scipy>=1.9', 'networkx>=2.8',
                      'pyyaml>=5.1'],
  extras_require = {
    'test': ['pytest>=7', 'hypothesis>=6.50'],
    'docs': ['sphinx'],
  },
  entry_points = {
    'console_scripts': ['distrank = distrank.bench.cli:main'],
  },
  description = ('Distance- and rank-based classification of '
                 'high-dimensional data'),
  long_description = ('Classifiers built on class-wise means of pairwise '
                      'distances and of their column ranks, followed by '
                      'quadratic discriminant analysis in the k-dimensional '
                      'summary space. Includes the closed-form moments of the '
                      'summary vectors, an analytic misclassification-rate '
                      'estimator, synthetic scenario generators (vector and '
                      'configuration-model graph data) and a seeded benchmark '
                      'runner.'),
  license = 'BSD',
  python_requires='>=3.9',
  classifiers=[
    'Development Status :: 4 - Beta',
    'Intended Audience :: Science/Research',
    'Programming Language :: Python :: 3',
    'Programming Language :: Python :: 3.9',
    'Programming Language :: Python :: 3.10',
    'Programming Language :: Python :: 3.11',
    'Topic :: Scientific/Engineering :: Mathematics',
  ],
)
