__license__ = 'MIT License <http://www.opensource.org/licenses/mit-license.php>'
__docformat__ = 'epytext'

import os
import sys

import django
from django.conf import settings

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {'format': '%(asctime)s %(levelname)s %(name)s: %(message)s'},
    },
    'handlers': {
        'console': {'class': 'logging.StreamHandler', 'formatter': 'plain'},
    },
    'loggers': {
        'schedules': {'handlers': ['console'], 'level': 'WARNING'},
    },
}


def configure():
    """
    Minimal settings for running the commands outside a Django project.
    """

    if not settings.configured and 'DJANGO_SETTINGS_MODULE' not in os.environ:
        settings.configure(INSTALLED_APPS=['schedules'], LOGGING=LOGGING, USE_TZ=True)
    django.setup()


def main(argv=None):
    from django.core.management import ManagementUtility

    configure()
    ManagementUtility(list(argv or sys.argv)).execute()


if __name__ == '__main__':
    main()
