from setuptools import setup


with open('README.md', 'rb') as readme_file:
    readme = readme_file.read().decode('utf-8')

setup(name='semitree',
      version='0.1',
      description='Rhodes expansions, length functions, elliptic trees and '
                  'wreath product embeddings of finite monoids',
      long_description=readme,
      license='MIT',
      keywords='semigroup monoid wreath-product elliptic-tree',
      packages=['semitree', 'semitree.tests'],
      package_data={'semitree.tests': ['fixtures/*.json']},
      install_requires=[
          'numpy',
          'networkx',
      ],
      scripts=['bin/semitree'],
      zip_safe=False)
