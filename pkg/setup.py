#!/usr/bin/env python

from setuptools import setup, find_packages
from schedules import __version__

setup(
	name='django-schedules',
	version=__version__,
	description='A Django app for design-time scheduling of DNN models on heterogeneous mobile processors.',
	packages=find_packages(exclude=('examples', 'examples.*')),
	include_package_data=True,
	package_data={'schedules': ['fixtures/*.json']},
	install_requires=('Django>=3.2', 'deap>=1.4', 'networkx>=2.8', 'numpy>=1.22'),
	extras_require={'test': ('pytest',)},
	entry_points={'console_scripts': ('schedules = schedules.cli:main',)},
	python_requires='>=3.8',
	zip_safe=False,
	license='MIT',
	classifiers=(
		'Development Status :: 3 - Alpha',
		'Environment :: Console',
		'Framework :: Django',
		'Intended Audience :: Science/Research',
		'License :: OSI Approved :: MIT License',
		'Operating System :: OS Independent',
		'Programming Language :: Python :: 3'),
)
