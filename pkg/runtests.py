#!/usr/bin/env python

import sys

import django
from django.conf import settings
from django.test.utils import get_runner

from schedules.cli import LOGGING


def run(labels):
	settings.configure(
		INSTALLED_APPS=['schedules'],
		DATABASES={},
		LOGGING=LOGGING,
		USE_TZ=True)
	django.setup()
	runner = get_runner(settings)()
	return runner.run_tests(labels or ['schedules'])


if __name__ == '__main__':
	sys.exit(bool(run(sys.argv[1:])))
