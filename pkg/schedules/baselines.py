__license__ = 'MIT License <http://www.opensource.org/licenses/mit-license.php>'
__docformat__ = 'epytext'

import enum
import logging
from collections import OrderedDict, deque

from schedules.exceptions import NoConfiguration
from schedules.graphs import decode_partition
from schedules.metrics import PeriodSpec, base_periods
from schedules.optimizer.evaluation import SimulationEvaluator
from schedules.optimizer.local_search import dominates
from schedules.profiling.compute import fastest_processor
from schedules.scenarios import catalog_order
from schedules.simulator import build_solution

logger = logging.getLogger(__name__)


class BaselineKind(enum.Enum):
    NPU_ONLY = 'npu-only'
    BEST_MAPPING = 'best-mapping'

    @classmethod
    def choices(cls):
        return [kind.value for kind in cls]


def _whole(scenario, graphs):
    return [decode_partition(graphs[name], [0] * len(graphs[name].edges)) for name in scenario.networks]


def npu_only(scenario, graphs, profile, db=None):
    """
    Every network whole on the NPU, prioritized in catalog order.

    @rtype: L{Solution}
    """

    if 'NPU' not in profile.processors or not profile.configs_for('NPU'):
        raise NoConfiguration('the device has no NPU')
    partitions = _whole(scenario, graphs)
    return build_solution(partitions, [('NPU',)] * len(partitions), catalog_order(scenario, graphs),
                          profile, db, BaselineKind.NPU_ONLY.value)


def best_mapping(scenario, graphs, profile, alpha=1.0, horizon=None, db=None, evaluator=None):
    """
    Pareto set of whole-network processor assignments.

    The search starts with every network on its fastest processor and
    keeps an archive of mutually non-dominated assignments. Each archived
    assignment is expanded by moving one network to another processor;
    neighbours no archive member dominates or ties enter the archive and
    are expanded in turn. Assignments are scored by the noiseless
    simulator.

    @rtype: list
    @return: L{Solution}s, ordered by objectives
    """

    if evaluator is None:
        spec = PeriodSpec(base_periods(scenario, graphs, profile, db=db), alpha)
        evaluator = SimulationEvaluator(scenario, profile, spec.periods, horizon, db, noisy=False)

    partitions = _whole(scenario, graphs)
    choices = [p for p in profile.processors if profile.configs_for(p)]

    def solve(assignment):
        return build_solution(partitions, [(p,) for p in assignment], scenario.networks,
                              profile, db, BaselineKind.BEST_MAPPING.value)

    start = tuple(fastest_processor(graphs[name], profile, db) for name in scenario.networks)
    archive = OrderedDict([(start, evaluator.fast(solve(start)))])
    queue = deque([start])
    visited = set([start])

    while queue:
        current = queue.popleft()
        if current not in archive:
            continue
        for i in range(len(current)):
            for processor in choices:
                if processor == current[i]:
                    continue
                neighbour = current[:i] + (processor,) + current[i + 1:]
                if neighbour in visited:
                    continue
                visited.add(neighbour)
                objectives = evaluator.fast(solve(neighbour))
                if any(dominates(v, objectives) or v == objectives for v in archive.values()):
                    continue
                for member in [m for m, v in archive.items() if dominates(objectives, v)]:
                    del archive[member]
                archive[neighbour] = objectives
                queue.append(neighbour)
                logger.debug('best mapping accepted %s', '/'.join(neighbour))

    logger.info('best mapping: %d assignments visited, %d kept', len(visited), len(archive))
    ordered = sorted(archive.items(), key=lambda item: (item[1], item[0]))
    return [solve(assignment) for assignment, _ in ordered]
