__license__ = 'MIT License <http://www.opensource.org/licenses/mit-license.php>'
__docformat__ = 'epytext'

import logging
import random

import numpy as np
from deap import tools

from schedules.metrics import PeriodSpec, base_periods
from schedules.optimizer.chromosome import SearchSpace
from schedules.optimizer.config import GAConfig
from schedules.optimizer.evaluation import SimulationEvaluator, split_seed
from schedules.optimizer.local_search import local_search
from schedules.optimizer.operators import crossover, mutate
from schedules.optimizer.selection import nsga3_select, reference_points

logger = logging.getLogger(__name__)


class ParetoArchive(tools.ParetoFront):
    """
    Mutually non-dominated chromosomes found over a whole search, with
    their decoded solutions and measured objectives.
    """

    @property
    def members(self):
        return [(c, c.solution, tuple(c.fitness.values)) for c in self]

    @property
    def solutions(self):
        return [c.solution for c in self]

    @property
    def objectives(self):
        return [tuple(c.fitness.values) for c in self]


def init_population(space, config, rng):
    """
    Random chromosomes, preceded by two heuristic seeds: every network
    whole on its fastest processor, and every network whole on the NPU
    when the device has one.

    @type  space: L{SearchSpace}
    @type  config: L{GAConfig}
    @type  rng: random.Random
    """

    population = [space.fastest()]
    if 'NPU' in space.profile.processors and space.profile.configs_for('NPU'):
        population.append(space.npu_only())
    while len(population) < config.population:
        population.append(space.random(rng))
    return population[:config.population]


class Bounds(object):
    # fixed per-objective scale taken from the initial population

    def __init__(self, population):
        values = np.array([c.fitness.values for c in population], dtype=float)
        self.low = values.min(axis=0)
        self.span = values.max(axis=0) - self.low
        self.span[self.span == 0] = 1.0

    def mean_fitness(self, population):
        values = np.array([c.fitness.values for c in population], dtype=float)
        return float(np.mean((values - self.low) / self.span))


class GeneticSearch(object):
    """
    NSGA-III search over partition, mapping and priority genes.

    Every generation pairs up all members, mates and mutates the pairs,
    refines some children with the local searches, measures them and keeps
    the best C{population} members of parents and children. The search
    stops once the population's mean normalized fitness fails to improve
    for C{patience} generations in a row.
    """

    def __init__(self, space, evaluator, config=None):
        self.space = space
        self.evaluator = evaluator
        self.config = config or GAConfig()
        self.rng = random.Random(self.config.seed)
        self.np_rng = np.random.default_rng(self.config.seed)
        self.refs = reference_points(space.n_objectives, self.config.population, self.config.divisions)
        self.archive = ParetoArchive()
        self.generation = 0

    def measure(self, chromosomes):
        for i, chromosome in enumerate(chromosomes):
            if chromosome.fitness.valid:
                continue
            chromosome.solution = self.space.decode(chromosome)
            seed = split_seed(self.config.seed, self.generation, i)
            chromosome.fitness.values = self.evaluator.measure(chromosome.solution, seed)

    def refine(self, chromosome):
        solution = local_search(self.space.decode(chromosome), self.evaluator)
        refined = self.space.encode(solution)
        if refined != chromosome:
            chromosome.partition, chromosome.mapping = refined.partition, refined.mapping
            del chromosome.fitness.values

    def offspring(self, population):
        config = self.config
        parents = list(population)
        self.rng.shuffle(parents)
        children = [p.clone() for p in parents]

        for a, b in zip(children[::2], children[1::2]):
            if self.rng.random() < config.crossover_prob:
                crossover(a, b, self.rng, config.upmx_prob)
        for child, parent in zip(children, parents):
            mutate(child, self.space, config, self.rng)
            if child != parent:
                del child.fitness.values
            if self.rng.random() < config.local_search_prob:
                self.refine(child)
        return children

    def run(self):
        """
        @rtype: L{ParetoArchive}
        """

        config = self.config
        population = init_population(self.space, config, self.rng)
        self.measure(population)
        self.archive.update(population)

        bounds = Bounds(population)
        best = bounds.mean_fitness(population)
        stale = 0

        while self.generation < config.max_generations and stale < config.patience:
            self.generation += 1
            children = self.offspring(population)
            self.measure(children)
            population = nsga3_select(population + children, config.population, self.refs, self.np_rng)
            self.archive.update(children)

            score = bounds.mean_fitness(population)
            if best - score >= config.min_improvement:
                best, stale = score, 0
            else:
                stale += 1
            logger.info('generation %d: mean fitness %.4f, archive %d, stagnant %d',
                        self.generation, score, len(self.archive), stale)

        logger.info('search finished after %d generations and %d evaluations',
                    self.generation, self.evaluator.evaluations)
        return self.archive


def run_ga(scenario, graphs, profile, alpha=1.0, config=None, db=None, evaluator=None):
    """
    Searches the Pareto schedules of a scenario with every group's period
    set to C{alpha} times its base period.

    @type  graphs: mapping
    @param graphs: network name to L{NetworkGraph}

    @rtype: L{ParetoArchive}
    """

    config = config or GAConfig()
    if evaluator is None:
        spec = PeriodSpec(base_periods(scenario, graphs, profile, db=db), alpha)
        evaluator = SimulationEvaluator(scenario, profile, spec.periods, config.horizon, db, config.noisy)
    space = SearchSpace(scenario, graphs, profile, db)
    return GeneticSearch(space, evaluator, config).run()
