import logging
import random
from itertools import product

import numpy as np
from django.test import SimpleTestCase

from schedules.baselines import npu_only
from schedules.catalog import build_catalog, build_profile
from schedules.graphs import decode_mapping, decode_partition
from schedules.optimizer import (
    Chromosome, GAConfig, SearchSpace, SimulationEvaluator, crossover, dominates, init_population,
    local_search_merge, local_search_reposition, mutate, nsga3_select, run_ga)
from schedules.optimizer.evaluation import solution_key, split_seed
from schedules.optimizer.local_search import _repositions
from schedules.optimizer.operators import one_point, upmx
from schedules.optimizer.selection import reference_points
from schedules.profiling import CommCostParams, NonLinearityParams
from schedules.scenarios import generate_scenario
from schedules.simulator import build_solution
from schedules.tests.utils import chain, make_profile, one_group, split, whole


logging.disable(logging.CRITICAL)


def individual(*values):
    chromosome = Chromosome([[]], [[0]], [0], len(values))
    chromosome.fitness.values = values
    return chromosome


def evaluator(scenario, profile):
    periods = dict((g.id, 1e9) for g in scenario.groups)
    return SimulationEvaluator(scenario, profile, periods, horizon=1, noisy=False)


class CatalogMixin(object):
    @classmethod
    def setUpClass(cls):
        super(CatalogMixin, cls).setUpClass()
        cls.catalog = build_catalog()
        cls.profile = build_profile(cls.catalog)
        cls.scenario = generate_scenario(cls.catalog, 2, 2, seed=2)
        cls.space = SearchSpace(cls.scenario, cls.catalog, cls.profile)


class OperatorTests(CatalogMixin, SimpleTestCase):
    def test_one_point(self):
        a, b = [0] * 6, [1] * 6
        one_point(a, b, 2)
        self.assertEqual(a, [0, 0, 1, 1, 1, 1])
        self.assertEqual(b, [1, 1, 0, 0, 0, 0])

    def test_identical_parents(self):
        rng = random.Random(4)
        parent = self.space.random(rng)
        a, b = parent.clone(), parent.clone()
        crossover(a, b, rng)
        self.assertEqual(a.genes, parent.genes)
        self.assertEqual(b.genes, parent.genes)

    def test_upmx_keeps_permutations(self):
        rng = random.Random(5)
        for _ in range(1000):
            n = rng.randint(1, 8)
            a, b = rng.sample(range(n), n), rng.sample(range(n), n)
            upmx(a, b, rng, 0.5)
            self.assertEqual(sorted(a), list(range(n)))
            self.assertEqual(sorted(b), list(range(n)))

    def test_upmx_exchanges_everything(self):
        a, b = [0, 1, 2, 3], [3, 2, 1, 0]
        upmx(a, b, random.Random(0), 1.0)
        self.assertEqual(sorted(a), [0, 1, 2, 3])
        self.assertEqual(sorted(b), [0, 1, 2, 3])

    def test_crossover_keeps_lengths(self):
        rng = random.Random(6)
        for _ in range(100):
            a, b = self.space.random(rng), self.space.random(rng)
            crossover(a, b, rng)
            for child in (a, b):
                self.assertEqual([len(bits) for bits in child.partition], [len(g.edges) for g in self.space.graphs])
                self.assertEqual([len(p) for p in child.mapping], [len(g.layers) for g in self.space.graphs])
                self.space.decode(child)

    def test_mutation_without_rates(self):
        config = GAConfig(bit_flip_prob=0.0, mapping_prob=0.0, swap_prob=0.0)
        rng = random.Random(7)
        chromosome = self.space.random(rng)
        before = chromosome.genes
        mutate(chromosome, self.space, config, rng)
        self.assertEqual(chromosome.genes, before)

    def test_mutants_decode(self):
        config = GAConfig(bit_flip_prob=0.3, mapping_prob=0.3, swap_prob=1.0)
        rng = random.Random(8)
        chromosome = self.space.random(rng)
        for _ in range(200):
            mutate(chromosome, self.space, config, rng)
            self.assertEqual(sorted(chromosome.priority), list(range(len(self.space.names))))
            self.space.decode(chromosome)

    def test_encode_inverts_decode(self):
        rng = random.Random(9)
        for _ in range(50):
            solution = self.space.decode(self.space.random(rng))
            again = self.space.decode(self.space.encode(solution))
            self.assertEqual(solution_key(again), solution_key(solution))


class InitTests(CatalogMixin, SimpleTestCase):
    def test_deterministic(self):
        config = GAConfig(population=12)
        first = init_population(self.space, config, random.Random(1))
        second = init_population(self.space, config, random.Random(1))
        self.assertEqual([c.genes for c in first], [c.genes for c in second])
        self.assertEqual(len(first), 12)

    def test_heuristic_seeds(self):
        population = init_population(self.space, GAConfig(population=4), random.Random(1))
        self.assertEqual(population[0].genes, self.space.fastest().genes)
        seeded = self.space.decode(population[1])
        self.assertEqual(solution_key(seeded), solution_key(npu_only(self.scenario, self.catalog, self.profile)))

    def test_config_checks(self):
        with self.assertRaises(ValueError):
            GAConfig(population=3)
        with self.assertRaises(ValueError):
            GAConfig(crossover_prob=1.5)

    def test_split_seed(self):
        self.assertEqual(split_seed(0, 1, 2), split_seed(0, 1, 2))
        self.assertNotEqual(split_seed(0, 1, 2), split_seed(0, 2, 1))


class SelectionTests(SimpleTestCase):
    def test_dominated_point_dropped(self):
        pool = [individual(1.0, 3.0), individual(3.0, 1.0), individual(2.0, 2.0), individual(4.0, 4.0)]
        chosen = nsga3_select(pool, 3, reference_points(2, 3), np.random.default_rng(0))
        self.assertEqual(sorted(c.fitness.values for c in chosen), [(1.0, 3.0), (2.0, 2.0), (3.0, 1.0)])

    def test_dominating_point_kept(self):
        pool = [individual(2.0, 3.0), individual(1.0, 1.0), individual(3.0, 2.0), individual(4.0, 4.0)]
        chosen = nsga3_select(pool, 1, reference_points(2, 1), np.random.default_rng(0))
        self.assertEqual([c.fitness.values for c in chosen], [(1.0, 1.0)])

    def test_identical_points(self):
        pool = [individual(2.0, 2.0) for _ in range(6)]
        chosen = nsga3_select(pool, 4, reference_points(2, 4), np.random.default_rng(0))
        self.assertEqual(len(chosen), 4)
        self.assertEqual(len(set(map(id, chosen))), 4)

    def test_last_front_spread(self):
        front = [individual(float(i), float(10 - i)) for i in range(11)]
        refs = reference_points(2, 3, divisions=2)
        chosen = nsga3_select(front, 3, refs, np.random.default_rng(0))
        self.assertEqual(sorted(c.fitness.values for c in chosen), [(0.0, 10.0), (5.0, 5.0), (10.0, 0.0)])

    def test_later_fronts_leave_scale_alone(self):
        front = [individual(float(i), float(10 - i)) for i in range(11)]
        refs = reference_points(2, 3, divisions=2)
        chosen = nsga3_select(front + [individual(1000.0, 20.0)], 3, refs, np.random.default_rng(0))
        self.assertEqual(sorted(c.fitness.values for c in chosen), [(0.0, 10.0), (5.0, 5.0), (10.0, 0.0)])

    def test_deterministic(self):
        rng = random.Random(3)
        pool = [individual(rng.random(), rng.random(), rng.random()) for _ in range(40)]
        refs = reference_points(3, 20)
        first = nsga3_select(pool, 20, refs, np.random.default_rng(11))
        second = nsga3_select(pool, 20, refs, np.random.default_rng(11))
        self.assertEqual([id(c) for c in first], [id(c) for c in second])

    def test_everything_fits(self):
        pool = [individual(1.0, 2.0), individual(2.0, 1.0)]
        self.assertEqual(nsga3_select(pool, 4, reference_points(2, 4), np.random.default_rng(0)), pool)

    def test_reference_points(self):
        self.assertEqual(len(reference_points(2, 64)), 64)
        self.assertEqual(len(reference_points(4, 64)), 84)


class MergeTests(SimpleTestCase):
    def test_launch_overhead_saved(self):
        graph = chain('net', 2)
        costs = {'net': {0: {'NPU': 1000.0}, 1: {'NPU': 1000.0}}}
        profile = make_profile(costs, processors=('NPU',),
                               nonlin={'NPU': NonLinearityParams(launch=200.0, dispatch=0.0, rho_inf=0.3)})
        scenario = one_group('net')
        ev = evaluator(scenario, profile)
        solution = build_solution([split(graph)], [('NPU', 'NPU')], ['net'], profile)
        self.assertAlmostEqual(ev.fast(solution)[0], 2400.0)

        merged = local_search_merge(solution, ev)
        self.assertEqual(merged.subgraph_count, 1)
        self.assertAlmostEqual(ev.fast(merged)[0], 1500.0)

    def test_worse_merge_rejected(self):
        graph = chain('net', 2)
        costs = {'net': {0: {'CPU': 100.0, 'GPU': 10000.0}, 1: {'CPU': 10000.0, 'GPU': 100.0}}}
        profile = make_profile(costs)
        scenario = one_group('net')
        solution = build_solution([split(graph)], [('CPU', 'GPU')], ['net'], profile)
        self.assertIs(local_search_merge(solution, evaluator(scenario, profile)), solution)

    def test_idempotent(self):
        catalog = build_catalog()
        profile = build_profile(catalog)
        scenario = generate_scenario(catalog, 1, 2, seed=4)
        space = SearchSpace(scenario, catalog, profile)
        ev = evaluator(scenario, profile)
        rng = random.Random(12)
        for _ in range(5):
            start = space.decode(space.random(rng))
            once = local_search_merge(start, ev)
            self.assertFalse(dominates(ev.fast(start), ev.fast(once)))
            self.assertEqual(solution_key(local_search_merge(once, ev)), solution_key(once))


class RepositionTests(SimpleTestCase):
    def setUp(self):
        self.graphs = {'x': chain('x', 3), 'y': chain('y', 1)}
        costs = {
            'x': {0: {'GPU': 100.0, 'CPU': 1000.0}, 1: {'GPU': 100.0, 'CPU': 100.0}, 2: {'GPU': 100.0, 'CPU': 100.0}},
            'y': {0: {'GPU': 300.0, 'CPU': 10000.0}},
        }
        self.profile = make_profile(costs)
        self.scenario = one_group('x', 'y')
        self.evaluator = evaluator(self.scenario, self.profile)

    def test_layer_moves_to_idle_processor(self):
        x = decode_partition(self.graphs['x'], [0, 1])
        solution = build_solution([x, whole(self.graphs['y'])], [('GPU', 'CPU'), ('GPU',)], ['x', 'y'], self.profile)
        self.assertEqual(self.evaluator.fast(solution), (500.0, 500.0))

        moved = local_search_reposition(solution, self.evaluator)
        placement = moved.placements['x']
        self.assertEqual(placement.partition.layer_sets, (frozenset([0]), frozenset([1, 2])))
        self.assertEqual(placement.processors, ('GPU', 'CPU'))
        self.assertEqual(self.evaluator.fast(moved), (400.0, 400.0))

    def test_single_layer_subgraphs_stay(self):
        graph = chain('net', 2)
        profile = make_profile({'net': {0: {'CPU': 1.0, 'GPU': 1.0}, 1: {'CPU': 1.0, 'GPU': 1.0}}})
        solution = build_solution([split(graph)], [('CPU', 'GPU')], ['net'], profile)
        self.assertEqual(list(_repositions(solution, evaluator(one_group('net'), profile))), [])

    def test_single_subgraph_unchanged(self):
        solution = build_solution([whole(self.graphs['x']), whole(self.graphs['y'])], [('GPU',), ('CPU',)],
                                  ['x', 'y'], self.profile)
        self.assertIs(local_search_reposition(solution, self.evaluator), solution)


class SearchTests(SimpleTestCase):
    def exhaustive_front(self, graph, profile, ev):
        values = set()
        for bits in product((0, 1), repeat=len(graph.edges)):
            pn = decode_partition(graph, bits)
            for prefs in product(range(len(profile.processors)), repeat=len(graph.layers)):
                processors = decode_mapping(pn, prefs, profile.processors)
                values.add(ev.fast(build_solution([pn], [processors], [graph.name], profile)))
        return set(v for v in values if not any(dominates(w, v) for w in values))

    def test_matches_exhaustive_front(self):
        graph = chain('net', 4, tensor_bytes=64 * 1024, input_bytes=16 * 1024, output_bytes=1024)
        costs = {'net': {
            0: {'CPU': 100.0, 'GPU': 900.0}, 1: {'CPU': 900.0, 'GPU': 100.0},
            2: {'CPU': 150.0, 'GPU': 800.0}, 3: {'CPU': 700.0, 'GPU': 120.0}}}
        profile = make_profile(costs, comm=CommCostParams())
        scenario = one_group('net')
        ev = evaluator(scenario, profile)
        config = GAConfig(population=16, max_generations=30, patience=30, horizon=1, noisy=False, seed=0)

        archive = run_ga(scenario, {'net': graph}, profile, config=config, evaluator=ev)
        self.assertEqual(set(archive.objectives), self.exhaustive_front(graph, profile, ev))

    def test_same_seed_same_archive(self):
        catalog = build_catalog()
        profile = build_profile(catalog)
        scenario = generate_scenario(catalog, 2, 2, seed=6)
        config = GAConfig(population=8, max_generations=3, horizon=2, seed=5)

        first = run_ga(scenario, catalog, profile, config=config)
        second = run_ga(scenario, catalog, profile, config=config)
        self.assertEqual([c.genes for c in first], [c.genes for c in second])
        self.assertEqual(first.objectives, second.objectives)

        objectives = first.objectives
        for a in objectives:
            self.assertFalse(any(dominates(b, a) for b in objectives))
