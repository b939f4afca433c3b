__license__ = 'MIT License <http://www.opensource.org/licenses/mit-license.php>'
__docformat__ = 'epytext'

import logging
import sys

from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError

from schedules.exceptions import ScheduleError
from schedules.forms import ArchiveForm, CatalogFileForm, ProfileFileForm, ScenarioFileForm

logger = logging.getLogger('schedules')

VERBOSITY = {0: logging.ERROR, 1: logging.WARNING, 2: logging.INFO, 3: logging.DEBUG}

# exit codes
USAGE, INVALID, INTERNAL = 1, 2, 3


def _usage_error(parser, message):
    if parser.called_from_command_line:
        parser.print_usage(sys.stderr)
        sys.stderr.write('%s: error: %s\n' % (parser.prog, message))
        sys.exit(USAGE)
    raise CommandError('Error: %s' % message, returncode=USAGE)


class ScheduleCommand(BaseCommand):
    """
    Base of the app's commands. Usage errors exit with 1, invalid input
    with 2 and anything unexpected with 3.
    """

    requires_system_checks = []

    def create_parser(self, prog_name, subcommand, **kwargs):
        parser = super(ScheduleCommand, self).create_parser(prog_name, subcommand, **kwargs)
        parser.error = lambda message: _usage_error(parser, message)
        return parser

    def add_inputs(self, parser, scenario=True):
        parser.add_argument('--catalog', required=True, help='catalog JSON file')
        parser.add_argument('--profile', required=True, help='device profile JSON file')
        if scenario:
            parser.add_argument('--scenario', required=True, help='scenario JSON file')

    def execute(self, *args, **options):
        logger.setLevel(VERBOSITY.get(options.get('verbosity', 1), logging.DEBUG))
        try:
            return super(ScheduleCommand, self).execute(*args, **options)
        except CommandError:
            raise
        except ValidationError as error:
            raise CommandError('; '.join(error.messages), returncode=INVALID)
        except ScheduleError as error:
            raise CommandError(str(error), returncode=INVALID)
        except Exception as error:
            if options.get('traceback'):
                raise
            logger.debug('unexpected failure', exc_info=True)
            raise CommandError('internal error: %s' % error, returncode=INTERNAL)

    def clean(self, form_class, data):
        form = form_class(data)
        if not form.is_valid():
            raise ValidationError(form.errors.as_data())
        return form.cleaned_data

    def load(self, form_class, path):
        return self.clean(form_class, {'path': path})['object']

    def load_solutions(self, path):
        return self.clean(ArchiveForm, {'path': path})['solutions']

    def load_inputs(self, options, scenario=True):
        """
        @rtype: tuple
        @return: catalog, profile and, if asked for, scenario
        """

        catalog = self.load(CatalogFileForm, options['catalog'])
        profile = self.load(ProfileFileForm, options['profile'])
        if not scenario:
            return catalog, profile
        loaded = self.load(ScenarioFileForm, options['scenario'])
        unknown = [name for name in loaded.networks if name not in catalog]
        if unknown:
            raise ValidationError('Scenario networks missing from the catalog: %s' % ', '.join(unknown),
                                  code='unknown_network')
        return catalog, profile, loaded
