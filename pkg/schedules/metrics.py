__license__ = 'MIT License <http://www.opensource.org/licenses/mit-license.php>'
__docformat__ = 'epytext'

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from schedules.conf import settings
from schedules.exceptions import IncompleteRequest
from schedules.profiling.compute import model_time

logger = logging.getLogger(__name__)

ANCHORS = ('arrival', 'start')


@dataclass(frozen=True)
class PeriodSpec:
    """
    @ivar base: base period per group id, in microseconds
    @ivar alpha: period multiplier
    """

    base: dict
    alpha: float = 1.0
    slack: float = field(default_factory=lambda: settings.PERIOD_SLACK)

    def __post_init__(self):
        if self.alpha <= 0:
            raise ValueError('the period multiplier must be positive')
        if any(b <= 0 for b in self.base.values()):
            raise ValueError('base periods must be positive')

    @property
    def periods(self):
        return {gid: period(self.alpha, b) for gid, b in self.base.items()}

    def scaled(self, alpha):
        return PeriodSpec(self.base, alpha, self.slack)


def base_period(group, graphs, profile, n_groups, slack=None, db=None):
    """
    Period leaving every group enough room when all groups share the
    device: the sum of the group's fastest whole-model times, times the
    number of groups, plus a slack share.

    @type  group: L{ModelGroup}
    @type  graphs: mapping
    @param graphs: network name to L{NetworkGraph}
    @type  n_groups: int

    @rtype: float
    @return: microseconds
    """

    if slack is None:
        slack = settings.PERIOD_SLACK
    total = 0.0
    for name in group.networks:
        total += min(model_time(graphs[name], p, profile, db)
                     for p in profile.processors if profile.configs_for(p))
    return total * n_groups * (1.0 + slack)


def base_periods(scenario, graphs, profile, slack=None, db=None):
    n = len(scenario.groups)
    return {g.id: base_period(g, graphs, profile, n, slack, db) for g in scenario.groups}


def period(alpha, base):
    if alpha <= 0:
        raise ValueError('the period multiplier must be positive')
    return alpha * base


def nearest_rank(values, q):
    """
    Nearest-rank percentile: the smallest value with at least C{q} percent
    of the values at or below it.
    """

    if not len(values):
        raise ValueError('no values')
    ordered = sorted(values)
    rank = int(math.ceil(q / 100.0 * len(ordered)))
    return ordered[max(rank, 1) - 1]


def makespans(trace, group, anchor='arrival'):
    """
    Makespan of every request of a group: the latest completion among the
    group's networks minus the request's arrival, or minus the earliest
    task start among the networks when C{anchor} is C{'start'}.

    @rtype: list
    @return: microseconds, in request order
    """

    if anchor not in ANCHORS:
        raise ValueError('unknown makespan anchor %r' % anchor)

    values = []
    for j in range(trace.horizon):
        finishes = []
        for name in group.networks:
            try:
                finishes.append(trace.finishes[(group.id, j, name)])
            except KeyError:
                raise IncompleteRequest('request %d of %s never completed on group %s' % (j, name, group.id))
        if anchor == 'arrival':
            origin = trace.arrivals[(group.id, j)]
        else:
            origin = min(trace.first_start(group.id, j, name) for name in group.networks)
        values.append(max(finishes) - origin)
    return values


def qoe_score(values, deadline):
    if deadline <= 0:
        raise ValueError('the deadline must be positive')
    if not len(values):
        raise ValueError('no requests to score')
    return sum(1 for v in values if v <= deadline) / float(len(values))


def rt_score(makespan, deadline, k=None):
    """
    Sigmoid of the normalized slack; 0.5 when the makespan meets the
    deadline exactly.
    """

    if deadline <= 0:
        raise ValueError('the deadline must be positive')
    if k is None:
        k = settings.RT_SENSITIVITY
    x = k * (makespan - deadline) / deadline
    if x >= 0:
        e = math.exp(-x)
        return e / (1.0 + e)
    return 1.0 / (1.0 + math.exp(x))


@dataclass(frozen=True)
class GroupScore:
    group: int
    makespans: tuple
    deadline: float
    qoe: float
    rt_mean: float


@dataclass(frozen=True)
class ScoreReport:
    groups: tuple
    alpha: float = 1.0
    k: float = field(default_factory=lambda: settings.RT_SENSITIVITY)

    @property
    def score(self):
        return scenario_score(self)


def score_report(trace, scenario, periods, alpha=1.0, k=None, anchor='arrival'):
    """
    Scores a simulated trace with every group's period as its deadline.

    @type  periods: dict
    @param periods: deadline per group id, in microseconds

    @rtype: L{ScoreReport}
    """

    if k is None:
        k = settings.RT_SENSITIVITY
    groups = []
    for group in scenario.groups:
        values = makespans(trace, group, anchor)
        deadline = periods[group.id]
        groups.append(GroupScore(
            group=group.id,
            makespans=tuple(values),
            deadline=deadline,
            qoe=qoe_score(values, deadline),
            rt_mean=sum(rt_score(v, deadline, k) for v in values) / len(values)))
    return ScoreReport(tuple(groups), alpha, k)


def scenario_score(report):
    if not report.groups:
        return 0.0
    return sum(g.rt_mean * g.qoe for g in report.groups) / len(report.groups)


@dataclass(frozen=True)
class AlphaGrid:
    start: float
    stop: float
    step: float

    def __post_init__(self):
        if self.start <= 0 or self.step <= 0 or self.stop <= self.start:
            raise ValueError('malformed multiplier grid %s:%s:%s' % (self.start, self.stop, self.step))

    @classmethod
    def parse(cls, text):
        try:
            start, stop, step = (float(v) for v in text.split(':'))
        except ValueError:
            raise ValueError('a multiplier grid reads start:stop:step, not %r' % text)
        return cls(start, stop, step)

    @property
    def values(self):
        count = int(math.floor((self.stop - self.start) / self.step + 1e-9)) + 1
        return [round(self.start + i * self.step, 10) for i in range(count)]

    def __str__(self):
        return '%g:%g:%g' % (self.start, self.stop, self.step)


@dataclass(frozen=True)
class SweepPoint:
    alpha: float
    scores: tuple
    objectives: tuple

    @property
    def median(self):
        return float(np.median(self.scores))

    @property
    def minimum(self):
        return min(self.scores)

    @property
    def maximum(self):
        return max(self.scores)

    def row(self):
        medians = [float(np.median(column)) for column in zip(*self.objectives)]
        return [self.alpha, self.median, self.minimum, self.maximum] + medians


def sweep_columns(scenario):
    columns = ['alpha', 'score_median', 'score_min', 'score_max']
    for group in scenario.groups:
        columns += ['g%s_avg' % group.id, 'g%s_p90' % group.id]
    return columns


def _noise_seed(seed, alpha_index, solution_index):
    if seed is None:
        return None
    return int(np.random.SeedSequence([seed, alpha_index, solution_index]).generate_state(1)[0])


def _score_point(args):
    from schedules.simulator import SimConfig, evaluate_objectives, simulate

    solution, scenario, profile, spec, horizon, seed, k, anchor = args
    periods = spec.periods
    config = SimConfig(periods=periods, horizon=horizon, noise_seed=seed)
    trace = simulate(solution, scenario, profile, config)
    report = score_report(trace, scenario, periods, spec.alpha, k, anchor)
    return report.score, evaluate_objectives(trace, scenario)


def sweep(solutions, scenario, profile, spec, grid, horizon=None, seed=None, k=None, anchor='arrival', jobs=1):
    """
    Simulates every solution at every multiplier of the grid, with the
    scaled periods as both arrival periods and deadlines.

    @type  spec: L{PeriodSpec}
    @param spec: base periods of the scenario's groups
    @type  grid: L{AlphaGrid}
    @type  seed: int
    @param seed: noise seed, C{None} for the noiseless simulator
    @type  jobs: int
    @param jobs: worker processes

    @rtype: list
    @return: one L{SweepPoint} per multiplier
    """

    if not solutions:
        raise ValueError('nothing to sweep')
    if horizon is None:
        horizon = settings.HORIZON

    work = []
    for a, alpha in enumerate(grid.values):
        scaled = spec.scaled(alpha)
        for s, solution in enumerate(solutions):
            work.append((solution, scenario, profile, scaled, horizon, _noise_seed(seed, a, s), k, anchor))

    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            results = list(executor.map(_score_point, work))
    else:
        results = [_score_point(item) for item in work]

    points = []
    n = len(solutions)
    for a, alpha in enumerate(grid.values):
        chunk = results[a * n:(a + 1) * n]
        point = SweepPoint(alpha, tuple(r[0] for r in chunk), tuple(r[1] for r in chunk))
        logger.debug('alpha %.2f: median score %.4f', alpha, point.median)
        points.append(point)
    return points


def saturation_point(points, threshold=None):
    """
    @type  points: sequence
    @param points: pairs of multiplier and median score, or L{SweepPoint}s
    @rtype: float
    @return: the smallest multiplier whose median score reaches the
        threshold, C{None} if none does
    """

    if threshold is None:
        threshold = settings.SATURATION_THRESHOLD
    table = [(p.alpha, p.median) if isinstance(p, SweepPoint) else tuple(p) for p in points]
    for alpha, median in sorted(table):
        if median >= threshold:
            return alpha
    return None


def saturation_multiplier(solutions, scenario, profile, spec, grid, **kwargs):
    return saturation_point(sweep(solutions, scenario, profile, spec, grid, **kwargs))
