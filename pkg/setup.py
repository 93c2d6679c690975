"""Setup of FarmGrid."""

from setuptools import setup

setup(name='farmgrid',
      version='1.0',
      description='Battery dispatch simulator of a dairy farm with PV',
      license='MIT License',
      packages=['farmgrid',
                'farmgrid.data_structures',
                'farmgrid.dispatch',
                'farmgrid.learning',
                'farmgrid.importers',
                'farmgrid.exporters',
                'farmgrid.generators',
                'farmgrid.harness',
                'farmgrid.resources',
                'farmgrid.utils'],
      include_package_data=True,
      zip_safe=False,
      python_requires='>=3.7',
      install_requires=[
          "numpy",
          "pandas",
          "tqdm"
      ],
      extras_require={
          "tests": ["pytest"],
          "docs": ["sphinx"]
      },
      entry_points={
          "console_scripts": ["farmgrid=farmgrid.cli:main"]
      })
