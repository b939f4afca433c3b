import django
from django.conf import settings

from schedules.cli import LOGGING


def pytest_configure():
	if not settings.configured:
		settings.configure(INSTALLED_APPS=['schedules'], DATABASES={}, LOGGING=LOGGING, USE_TZ=True)
	django.setup()
