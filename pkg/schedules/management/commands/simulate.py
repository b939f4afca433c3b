__license__ = 'MIT License <http://www.opensource.org/licenses/mit-license.php>'
__docformat__ = 'epytext'

from django.core.exceptions import ValidationError

from schedules.conf import settings
from schedules.helpers import solution_from_dict, write_trace
from schedules.management.commands._base import ScheduleCommand
from schedules.metrics import PeriodSpec, base_periods, score_report
from schedules.simulator import SimConfig, evaluate_objectives, simulate


class Command(ScheduleCommand):
    help = 'Simulates one solution file and reports its makespans and score.'

    def add_arguments(self, parser):
        parser.add_argument('solution', help='solution JSON file')
        self.add_inputs(parser)
        parser.add_argument('--alpha', type=float, default=1.0, help='period multiplier')
        parser.add_argument('--horizon', type=int, default=settings.HORIZON)
        parser.add_argument('--seed', type=int, help='noise seed; noiseless when omitted')
        parser.add_argument('--anchor', choices=('arrival', 'start'), default='arrival')
        parser.add_argument('--trace', help='CSV file receiving the task records')

    def handle(self, *args, **options):
        catalog, profile, scenario = self.load_inputs(options)
        solutions = self.load_solutions(options['solution'])
        if len(solutions) > 1:
            raise ValidationError('%s holds %d solutions, pick one file' % (options['solution'], len(solutions)),
                                  code='ambiguous')
        solution = solution_from_dict(solutions[0], scenario, catalog, profile)

        periods = PeriodSpec(base_periods(scenario, catalog, profile), options['alpha']).periods
        config = SimConfig(periods=periods, horizon=options['horizon'], noise_seed=options['seed'])
        trace = simulate(solution, scenario, profile, config)
        if options['trace']:
            write_trace(trace, options['trace'])

        objectives = evaluate_objectives(trace, scenario)
        report = score_report(trace, scenario, periods, options['alpha'], anchor=options['anchor'])
        for i, (group, score) in enumerate(zip(scenario.groups, report.groups)):
            self.stdout.write('group %d: avg %.1f us, p90 %.1f us, qoe %.3f, rt %.3f' % (
                group.id, objectives[2 * i], objectives[2 * i + 1], score.qoe, score.rt_mean))
        self.stdout.write('score %.4f' % report.score)
