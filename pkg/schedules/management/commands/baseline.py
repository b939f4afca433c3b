__license__ = 'MIT License <http://www.opensource.org/licenses/mit-license.php>'
__docformat__ = 'epytext'

from django.utils import timezone

from schedules.baselines import BaselineKind, best_mapping, npu_only
from schedules.conf import settings
from schedules.helpers import write_archive, write_manifest
from schedules.management.commands._base import ScheduleCommand
from schedules.metrics import PeriodSpec, base_periods
from schedules.optimizer import SimulationEvaluator


class Command(ScheduleCommand):
    help = 'Builds a heuristic baseline schedule for a scenario.'

    def add_arguments(self, parser):
        parser.add_argument('kind', choices=BaselineKind.choices())
        self.add_inputs(parser)
        parser.add_argument('--alpha', type=float, default=1.0, help='period multiplier searched at')
        parser.add_argument('--horizon', type=int, default=settings.HORIZON)
        parser.add_argument('--out', required=True, help='output directory')

    def handle(self, *args, **options):
        started = timezone.now()
        catalog, profile, scenario = self.load_inputs(options)
        kind = BaselineKind(options['kind'])

        spec = PeriodSpec(base_periods(scenario, catalog, profile), options['alpha'])
        evaluator = SimulationEvaluator(scenario, profile, spec.periods, options['horizon'], noisy=False)
        if kind == BaselineKind.NPU_ONLY:
            solutions = [npu_only(scenario, catalog, profile)]
        else:
            solutions = best_mapping(scenario, catalog, profile, evaluator=evaluator)

        write_archive(options['out'], [(s, evaluator.fast(s)) for s in solutions], profile)
        write_manifest(
            options['out'], 'baseline %s' % kind.value,
            inputs={k: options[k] for k in ('catalog', 'profile', 'scenario')},
            alphas=[options['alpha']],
            seeds={'scenario': scenario.seed},
            started=started)
        self.stdout.write('%d %s solutions written to %s' % (len(solutions), kind.value, options['out']))
