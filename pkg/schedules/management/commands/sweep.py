__license__ = 'MIT License <http://www.opensource.org/licenses/mit-license.php>'
__docformat__ = 'epytext'

import os
from collections import OrderedDict

from django.utils import timezone

from schedules.conf import settings
from schedules.forms import SweepOptionsForm, labelled
from schedules.helpers import solution_from_dict, write_manifest, write_summary, write_sweep
from schedules.management.commands._base import ScheduleCommand
from schedules.metrics import PeriodSpec, base_periods, saturation_point, sweep


class Command(ScheduleCommand):
    help = 'Scores solutions over a grid of period multipliers and reports where each method saturates.'

    def add_arguments(self, parser):
        self.add_inputs(parser)
        parser.add_argument('--solutions', action='append', required=True,
                            help='label=path of a solution file or archive directory; repeatable')
        parser.add_argument('--grid', default='0.3:4.0:0.1', help='start:stop:step')
        parser.add_argument('--horizon', type=int, default=settings.HORIZON)
        parser.add_argument('--seed', type=int, help='noise seed; noiseless when omitted')
        parser.add_argument('--jobs', type=int, default=1)
        parser.add_argument('--out', required=True, help='output directory')

    def handle(self, *args, **options):
        started = timezone.now()
        catalog, profile, scenario = self.load_inputs(options)
        cleaned = self.clean(SweepOptionsForm, options)
        grid = cleaned['grid']
        spec = PeriodSpec(base_periods(scenario, catalog, profile))

        points, saturation = OrderedDict(), OrderedDict()
        for label, path in labelled(options['solutions']):
            solutions = [solution_from_dict(d, scenario, catalog, profile) for d in self.load_solutions(path)]
            points[label] = sweep(solutions, scenario, profile, spec, grid, cleaned['horizon'],
                                  cleaned['seed'], jobs=cleaned['jobs'])
            saturation[label] = saturation_point(points[label])
            self.stdout.write('%s: saturates at %s' % (
                label, saturation[label] if saturation[label] is not None else 'above %g' % grid.stop))

        os.makedirs(options['out'], exist_ok=True)
        write_sweep(os.path.join(options['out'], 'sweep.csv'), scenario, points)
        write_summary(os.path.join(options['out'], 'summary.csv'), saturation, grid)
        write_manifest(
            options['out'], 'sweep',
            inputs=dict({k: options[k] for k in ('catalog', 'profile', 'scenario')},
                        solutions=options['solutions']),
            alphas=grid.values,
            seeds={'noise': cleaned['seed'], 'scenario': scenario.seed},
            started=started)
