__license__ = 'MIT License <http://www.opensource.org/licenses/mit-license.php>'
__docformat__ = 'epytext'

from django.core.exceptions import ValidationError

from schedules.exceptions import MissingCost
from schedules.forms import CatalogFileForm, ProfileFileForm, ScenarioFileForm
from schedules.management.commands._base import ScheduleCommand


class Command(ScheduleCommand):
    help = 'Checks input files: network structure, profile coverage and scenario membership.'

    def add_arguments(self, parser):
        parser.add_argument('--catalog', required=True, help='catalog JSON file')
        parser.add_argument('--profile', help='device profile JSON file')
        parser.add_argument('--scenario', help='scenario JSON file')

    def handle(self, *args, **options):
        catalog = self.load(CatalogFileForm, options['catalog'])
        errors = []

        if options['profile']:
            profile = self.load(ProfileFileForm, options['profile'])
            for graph in catalog:
                for config in profile.configs:
                    try:
                        for layer in graph.layers:
                            profile.layer_cost(graph.name, layer.id, config)
                    except MissingCost as error:
                        errors.append(ValidationError(str(error), code='unpriced'))
                        break

        if options['scenario']:
            scenario = self.load(ScenarioFileForm, options['scenario'])
            for name in scenario.networks:
                if name not in catalog:
                    errors.append(ValidationError('%s is not in the catalog' % name, code='unknown_network'))

        if errors:
            raise ValidationError(errors)
        self.stdout.write('ok: %d networks' % len(catalog))
