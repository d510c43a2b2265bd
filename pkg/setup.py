from setuptools import setup, find_packages
import os
import sys

assert sys.version_info >= (3, 8), (
    "Please use Python version 3.8 or higher, "
    "lower versions are not supported"
)

here = os.path.abspath(os.path.dirname(__file__))

# Get the long description from the README file
with open(os.path.join(here, 'README.rst'), encoding='utf-8') as f:
    long_description = f.read()


setup(
    name='popsumkit',
    use_scm_version=True,
    setup_requires=[
        'setuptools_scm',
    ],
    install_requires=[
        'numpy',
        'scikit-learn>=0.18',
        'psutil',
    ],
    author='Popular Sumset Toolkit developers',
    description='Popular Sumset Toolkit',
    license='Apache 2',
    keywords='additive combinatorics, sumset, abelian group, Pollard, '
             'Kneser',
    long_description=long_description,
    packages=find_packages(exclude=['tests', 'tests.*']),
    entry_points={
        'console_scripts': [
            'popsumkit = popsumkit.cli:main',
        ],
    },
    python_requires='>=3.8',
    zip_safe=False,
)
