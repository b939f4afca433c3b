__license__ = 'MIT License <http://www.opensource.org/licenses/mit-license.php>'
__docformat__ = 'epytext'

from functools import lru_cache

from deap import base

from schedules.exceptions import InvalidChromosome
from schedules.graphs import decode_mapping, decode_partition
from schedules.profiling.compute import fastest_processor
from schedules.scenarios import catalog_order
from schedules.simulator import build_solution


@lru_cache(maxsize=None)
def fitness_class(n_objectives):
    """
    DEAP fitness minimizing the given number of objectives.
    """

    return type('ScheduleFitness%d' % n_objectives, (base.Fitness,), {'weights': (-1.0,) * n_objectives})


class Chromosome(object):
    """
    Genes of one candidate schedule, in scenario network order: cut bits
    over every network's edges, a processor index per layer and a
    permutation of network indices, highest priority first.

    The decoded L{Solution} travels with the genes once evaluated.
    """

    def __init__(self, partition, mapping, priority, n_objectives):
        self.partition = [list(bits) for bits in partition]
        self.mapping = [list(prefs) for prefs in mapping]
        self.priority = list(priority)
        self.fitness = fitness_class(n_objectives)()
        self.solution = None

    @property
    def genes(self):
        return (tuple(map(tuple, self.partition)), tuple(map(tuple, self.mapping)), tuple(self.priority))

    def __eq__(self, other):
        return isinstance(other, Chromosome) and self.genes == other.genes

    def __hash__(self):
        return hash(self.genes)

    def clone(self):
        twin = Chromosome(self.partition, self.mapping, self.priority, len(self.fitness.weights))
        if self.fitness.valid:
            twin.fitness.values = self.fitness.values
        twin.solution = self.solution
        return twin

    def __deepcopy__(self, memo):
        # solutions are immutable and shared between copies
        return self.clone()

    def __repr__(self):
        return 'Chromosome(%r, %r, %r)' % (self.partition, self.mapping, self.priority)


class SearchSpace(object):
    """
    Translates between chromosomes and solutions of one scenario.

    @type  graphs: mapping
    @param graphs: network name to L{NetworkGraph}, a L{Catalog} will do
    """

    def __init__(self, scenario, graphs, profile, db=None):
        self.scenario = scenario
        self.profile = profile
        self.db = db
        self.names = scenario.networks
        self.graphs = [graphs[name] for name in self.names]
        self.catalog_priority = catalog_order(scenario, graphs)
        self.choices = [i for i, p in enumerate(profile.processors) if profile.configs_for(p)]
        self.n_objectives = 2 * len(scenario.groups)
        if not self.choices:
            raise InvalidChromosome('the profile offers no processor to map to')

    def chromosome(self, partition, mapping, priority):
        return Chromosome(partition, mapping, priority, self.n_objectives)

    def check(self, chromosome):
        if len(chromosome.partition) != len(self.graphs) or len(chromosome.mapping) != len(self.graphs):
            raise InvalidChromosome('genes for %d networks expected' % len(self.graphs))
        if sorted(chromosome.priority) != list(range(len(self.graphs))):
            raise InvalidChromosome('priority %r is not a permutation' % (chromosome.priority,))

    def decode(self, chromosome, method='ga'):
        """
        @rtype: L{Solution}
        """

        self.check(chromosome)
        partitions, assignments = [], []
        for graph, bits, prefs in zip(self.graphs, chromosome.partition, chromosome.mapping):
            pn = decode_partition(graph, bits)
            partitions.append(pn)
            assignments.append(decode_mapping(pn, prefs, self.profile.processors))
        priority = [self.names[i] for i in chromosome.priority]
        return build_solution(partitions, assignments, priority, self.profile, self.db, method)

    def encode(self, solution):
        cuts, prefs, priority = solution.genes(self.profile)
        return self.chromosome(
            [cuts[name] for name in self.names], [prefs[name] for name in self.names], priority)

    def random(self, rng):
        return self.chromosome(
            [[rng.randint(0, 1) for _ in graph.edges] for graph in self.graphs],
            [[rng.choice(self.choices) for _ in graph.layers] for graph in self.graphs],
            rng.sample(range(len(self.graphs)), len(self.graphs)))

    def unpartitioned(self, processors, priority=None):
        """
        Every network whole on the given processor, networks prioritized in
        scenario order unless a priority is given.

        @type  processors: sequence
        @param processors: processor name per network
        @type  priority: sequence
        @param priority: network names, highest priority first
        """

        if priority is None:
            priority = self.names
        return self.chromosome(
            [[0] * len(graph.edges) for graph in self.graphs],
            [[self.profile.index(p)] * len(graph.layers) for graph, p in zip(self.graphs, processors)],
            [self.names.index(name) for name in priority])

    def fastest(self):
        return self.unpartitioned([fastest_processor(g, self.profile, self.db) for g in self.graphs])

    def npu_only(self):
        return self.unpartitioned(['NPU'] * len(self.graphs), self.catalog_priority)
