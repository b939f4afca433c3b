__license__ = 'MIT License <http://www.opensource.org/licenses/mit-license.php>'
__docformat__ = 'epytext'

from schedules.catalog import build_profile
from schedules.forms import CatalogFileForm
from schedules.helpers import dump, profile_to_dict
from schedules.management.commands._base import ScheduleCommand


class Command(ScheduleCommand):
    help = 'Calibrates per-layer costs from the whole-model times of a catalog.'

    def add_arguments(self, parser):
        parser.add_argument('--catalog', required=True, help='catalog JSON file')
        parser.add_argument('out', help='profile JSON file to write')

    def handle(self, *args, **options):
        catalog = self.load(CatalogFileForm, options['catalog'])
        profile = build_profile(catalog)
        dump(profile_to_dict(profile), options['out'])
        self.stdout.write('%d configurations on %s written to %s' % (
            len(profile.configs), ', '.join(profile.processors), options['out']))
