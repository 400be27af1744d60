from setuptools import setup

setup(name='kraupy',
      version='0.1.0',
      description='Random-Unitary Channel Package',
      long_description='Random-unitary decompositions of quantum channels, '
                       'rank-one POVM tools and environment-assisted '
                       'correction in Python',
      license='Apache License 2.0',
      packages=['kraupy'],
      install_requires=['numpy', 'scipy'],
      entry_points={'console_scripts': ['kraupy=kraupy.cli:main']})
