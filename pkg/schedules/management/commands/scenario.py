__license__ = 'MIT License <http://www.opensource.org/licenses/mit-license.php>'
__docformat__ = 'epytext'

from schedules.forms import CatalogFileForm, ScenarioOptionsForm
from schedules.helpers import dump, scenario_to_dict
from schedules.management.commands._base import ScheduleCommand
from schedules.scenarios import contrast_scenario, generate_scenario


class Command(ScheduleCommand):
    help = 'Draws disjoint model groups from a catalog.'

    def add_arguments(self, parser):
        parser.add_argument('--catalog', required=True, help='catalog JSON file')
        parser.add_argument('--groups', type=int, default=1)
        parser.add_argument('--models', type=int, default=3, help='models per group')
        parser.add_argument('--seed', type=int, default=0)
        parser.add_argument('--contrast', action='store_true',
                            help='one group of the lightest models and one of the heaviest instead of a draw')
        parser.add_argument('out', help='scenario JSON file to write')

    def handle(self, *args, **options):
        catalog = self.load(CatalogFileForm, options['catalog'])
        cleaned = self.clean(ScenarioOptionsForm, options)
        if options['contrast']:
            scenario = contrast_scenario(catalog, cleaned['models'])
        else:
            scenario = generate_scenario(catalog, cleaned['groups'], cleaned['models'], cleaned['seed'])
        dump(scenario_to_dict(scenario), options['out'])
        for group in scenario.groups:
            self.stdout.write('group %d: %s' % (group.id, ', '.join(group.networks)))
