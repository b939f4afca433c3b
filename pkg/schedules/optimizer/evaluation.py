__license__ = 'MIT License <http://www.opensource.org/licenses/mit-license.php>'
__docformat__ = 'epytext'

import logging

import numpy as np

from schedules.conf import settings
from schedules.simulator import SimConfig, evaluate_objectives, simulate

logger = logging.getLogger(__name__)


def split_seed(*entropy):
    """
    Independent integer seed for one evaluation, derived from a master
    seed and the evaluation's coordinates.
    """

    return int(np.random.SeedSequence(list(entropy)).generate_state(1)[0])


def solution_key(solution):
    return (
        tuple((name, p.partition.layer_sets, p.processors, tuple(c.key for c in p.configs))
              for name, p in solution.placements.items()),
        solution.priority)


class Evaluator(object):
    """
    Scores solutions in two tiers: a fast deterministic estimate used by the
    local searches and a measurement standing in for execution on the
    device, which may fluctuate from seed to seed.
    """

    def __init__(self, scenario, profile, db=None):
        self.scenario = scenario
        self.profile = profile
        self.db = db
        self.evaluations = 0

    def fast(self, solution):
        raise NotImplementedError

    def measure(self, solution, seed):
        raise NotImplementedError


class SimulationEvaluator(Evaluator):
    """
    Both tiers backed by the simulator; measurements add execution time
    jitter unless C{noisy} is off. Fast results are memoized per solution.

    @type  periods: dict
    @param periods: request period per group id, in microseconds
    """

    def __init__(self, scenario, profile, periods, horizon=None, db=None, noisy=True):
        super(SimulationEvaluator, self).__init__(scenario, profile, db)
        self.config = SimConfig(periods=dict(periods), horizon=horizon or settings.HORIZON)
        self.noisy = noisy
        self._memo = {}

    def _run(self, solution, config):
        self.evaluations += 1
        trace = simulate(solution, self.scenario, self.profile, config, self.db)
        return evaluate_objectives(trace, self.scenario)

    def fast(self, solution):
        key = solution_key(solution)
        if key not in self._memo:
            self._memo[key] = self._run(solution, self.config)
        return self._memo[key]

    def measure(self, solution, seed):
        if not self.noisy:
            return self.fast(solution)
        return self._run(solution, self.config.with_noise(seed))
