__license__ = 'MIT License <http://www.opensource.org/licenses/mit-license.php>'
__docformat__ = 'epytext'

from schedules.catalog import SEED_MODELS, build_catalog, load_seed_models
from schedules.helpers import catalog_to_dict, dump
from schedules.management.commands._base import ScheduleCommand


class Command(ScheduleCommand):
    help = 'Synthesizes the layer graphs of the seed models into a catalog file.'

    def add_arguments(self, parser):
        parser.add_argument('out', help='catalog JSON file to write')
        parser.add_argument('--seed-models', default=SEED_MODELS, help='seed model table')
        parser.add_argument('--name', default='seed')

    def handle(self, *args, **options):
        catalog = build_catalog(load_seed_models(options['seed_models']), options['name'])
        dump(catalog_to_dict(catalog), options['out'])
        self.stdout.write('%d networks written to %s' % (len(catalog), options['out']))
