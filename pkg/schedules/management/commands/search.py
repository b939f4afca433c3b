__license__ = 'MIT License <http://www.opensource.org/licenses/mit-license.php>'
__docformat__ = 'epytext'

import logging

from django.utils import timezone

from schedules.conf import settings
from schedules.forms import SearchOptionsForm
from schedules.helpers import write_archive, write_manifest
from schedules.management.commands._base import ScheduleCommand
from schedules.optimizer import GAConfig, run_ga
from schedules.profiling import ProfileDB

logger = logging.getLogger(__name__)


class Command(ScheduleCommand):
    help = 'Searches Pareto schedules of a scenario and writes them as an archive directory.'

    def add_arguments(self, parser):
        self.add_inputs(parser)
        parser.add_argument('--alpha', type=float, default=1.0, help='period multiplier searched at')
        parser.add_argument('--population', type=int, default=settings.GA_POPULATION)
        parser.add_argument('--generations', type=int, default=settings.GA_MAX_GENERATIONS)
        parser.add_argument('--seed', type=int, default=0)
        parser.add_argument('--horizon', type=int, default=settings.HORIZON)
        parser.add_argument('--noiseless', action='store_true', help='measure without execution time jitter')
        parser.add_argument('--profile-db', help='JSON lines file caching subgraph times')
        parser.add_argument('--out', required=True, help='archive directory')

    def handle(self, *args, **options):
        started = timezone.now()
        catalog, profile, scenario = self.load_inputs(options)
        cleaned = self.clean(SearchOptionsForm, options)
        config = GAConfig(
            population=cleaned['population'],
            max_generations=cleaned['generations'],
            horizon=cleaned['horizon'],
            seed=cleaned['seed'],
            noisy=not options['noiseless'])
        db = ProfileDB(options['profile_db']) if options['profile_db'] else None

        archive = run_ga(scenario, catalog, profile, cleaned['alpha'], config, db)
        if db is not None:
            logger.info('profile database: %d hits, %d misses, %d records', db.hits, db.misses, len(db))
        members = sorted(((s, o) for _, s, o in archive.members), key=lambda m: m[1])
        write_archive(options['out'], members, profile)
        write_manifest(
            options['out'], 'search',
            inputs={k: options[k] for k in ('catalog', 'profile', 'scenario')},
            alphas=[cleaned['alpha']],
            seeds={'ga': cleaned['seed'], 'scenario': scenario.seed},
            started=started)
        self.stdout.write('%d solutions written to %s' % (len(members), options['out']))
