import io
import logging
import random
from collections import defaultdict
from itertools import permutations, product

from django.test import SimpleTestCase

from schedules.catalog import build_catalog, build_profile
from schedules.exceptions import EmptyTrace, InconsistentSolution
from schedules.graphs import HOST
from schedules.metrics import PeriodSpec, base_periods
from schedules.optimizer import SearchSpace
from schedules.profiling import CommCostParams, NonLinearityParams, comm_cost, subgraph_time
from schedules.profiling.device import MiB
from schedules.scenarios import generate_scenario
from schedules.simulator import SimConfig, Trace, build_solution, evaluate_objectives, simulate
from schedules.tests.utils import chain, make_profile, one_group, own_groups, split, whole


logging.disable(logging.CRITICAL)


def run(solution, scenario, profile, period=1e9, horizon=1, **kwargs):
    periods = dict((g.id, period) for g in scenario.groups)
    return simulate(solution, scenario, profile, SimConfig(periods=periods, horizon=horizon, **kwargs))


def idle_overlaps(busy, begin, end):
    """
    Whether a processor busy during the given intervals sits idle for a
    positive stretch of [begin, end).
    """

    idle = []
    last = 0.0
    for start, finish in sorted(busy):
        if start > last:
            idle.append((last, start))
        last = max(last, finish)
    idle.append((last, float('inf')))
    return any(max(a, begin) < min(b, end) for a, b in idle)


class BasicSimulationTests(SimpleTestCase):
    def test_single_task(self):
        graph = chain('a', 1)
        profile = make_profile({'a': {0: {'CPU': 1000.0}}}, processors=('CPU',))
        solution = build_solution([whole(graph)], [('CPU',)], ['a'], profile)
        trace = run(solution, one_group('a'), profile)
        self.assertEqual(trace.finishes[(0, 0, 'a')], 1000.0)
        self.assertEqual(len(trace), 1)
        self.assertTrue(trace.complete)

    def test_chain_across_processors(self):
        graph = chain('a', 2, tensor_bytes=MiB)
        costs = {'a': {0: {'CPU': 1000.0, 'GPU': 5000.0}, 1: {'CPU': 5000.0, 'GPU': 2000.0}}}
        profile = make_profile(costs, comm=CommCostParams())
        solution = build_solution([split(graph)], [('CPU', 'GPU')], ['a'], profile)
        trace = run(solution, one_group('a'), profile)

        expected = 1000.0 + comm_cost(MiB, 'CPU', 'GPU', profile.comm) + 2000.0 + comm_cost(0, 'GPU', 'CPU', profile.comm)
        self.assertAlmostEqual(trace.finishes[(0, 0, 'a')], expected)
        self.assertAlmostEqual(expected, 3126.21, delta=0.01)

    def test_priority_orders_shared_processor(self):
        costs = {'a': {0: {'CPU': 1000.0}}, 'b': {0: {'CPU': 1000.0}}}
        profile = make_profile(costs, processors=('CPU',))
        partitions = [whole(chain('a', 1)), whole(chain('b', 1))]
        scenario = own_groups('a', 'b')

        first = build_solution(partitions, [('CPU',), ('CPU',)], ['a', 'b'], profile)
        self.assertEqual(evaluate_objectives(run(first, scenario, profile), scenario), (1000.0, 1000.0, 2000.0, 2000.0))

        second = build_solution(partitions, [('CPU',), ('CPU',)], ['b', 'a'], profile)
        self.assertEqual(evaluate_objectives(run(second, scenario, profile), scenario), (2000.0, 2000.0, 1000.0, 1000.0))

    def test_quantization_delay(self):
        graph = chain('a', 2, tensor_bytes=5000)
        costs = {'a': {0: {'CPU': 300.0, 'GPU': 300.0}, 1: {'CPU': 300.0, 'GPU': 300.0}}}
        same = make_profile(costs, comm=CommCostParams())
        mixed = make_profile(costs, comm=CommCostParams(), dtypes={'CPU': 'fp32'})

        finishes = []
        for profile in (same, mixed):
            solution = build_solution([split(graph)], [('CPU', 'GPU')], ['a'], profile)
            finishes.append(run(solution, one_group('a'), profile).finishes[(0, 0, 'a')])
        self.assertAlmostEqual(finishes[1] - finishes[0], 1.0)

    def test_requests_accumulate(self):
        profile = make_profile({'a': {0: {'CPU': 1000.0}}}, processors=('CPU',))
        solution = build_solution([whole(chain('a', 1))], [('CPU',)], ['a'], profile)
        trace = run(solution, one_group('a'), profile, period=500.0, horizon=4)
        values = [trace.finishes[(0, j, 'a')] - trace.arrivals[(0, j)] for j in range(4)]
        self.assertEqual(values, [1000.0, 1500.0, 2000.0, 2500.0])

    def test_chain_on_one_processor(self):
        graph = chain('a', 3, tensor_bytes=MiB, input_bytes=MiB // 2, output_bytes=MiB // 8)
        costs = {'a': dict((i, {'GPU': 700.0 + i}) for i in range(3))}
        profile = make_profile(costs, processors=('GPU',), comm=CommCostParams(),
                               nonlin={'GPU': NonLinearityParams(300.0, 10.0, 0.95)})
        pn = split(graph)
        solution = build_solution([pn], [('GPU',) * 3], ['a'], profile)
        trace = run(solution, one_group('a'), profile)

        expected = (comm_cost(MiB // 2, 'CPU', 'GPU', profile.comm)
                    + sum(subgraph_time(sg, c, profile) for sg, c in zip(pn.subgraphs, solution.placements['a'].configs))
                    + comm_cost(MiB // 8, 'GPU', 'CPU', profile.comm))
        self.assertAlmostEqual(trace.finishes[(0, 0, 'a')], expected)

    def test_inconsistent_solution(self):
        profile = make_profile({'a': {0: {'CPU': 1.0}}}, processors=('CPU',))
        solution = build_solution([whole(chain('a', 1))], [('CPU',)], ['a'], profile)
        with self.assertRaises(InconsistentSolution):
            run(solution, one_group('a', 'b'), profile)

    def test_invalid_config(self):
        with self.assertRaises(ValueError):
            SimConfig(periods={0: 100.0}, horizon=0)
        with self.assertRaises(ValueError):
            SimConfig(periods={0: 0.0})
        with self.assertRaises(ValueError):
            SimConfig(periods={0: 1.0}, noise_sigma={'CPU': -0.1})

    def test_trace_export(self):
        profile = make_profile({'a': {0: {'CPU': 1000.0}}}, processors=('CPU',))
        solution = build_solution([whole(chain('a', 1))], [('CPU',)], ['a'], profile)
        handle = io.StringIO()
        run(solution, one_group('a'), profile, horizon=2).export(handle)
        lines = handle.getvalue().splitlines()
        self.assertEqual(lines[0], 'group,request,network,subgraph,processor,ready,start,finish,arrival')
        self.assertEqual(len(lines), 3)


class ObjectiveTests(SimpleTestCase):
    def trace(self, scenario, values):
        trace = Trace(scenario, len(values))
        for j, value in enumerate(values):
            for group in scenario.groups:
                trace.arrivals[(group.id, j)] = 0.0
                for name in group.networks:
                    trace.finishes[(group.id, j, name)] = value
        return trace

    def test_average_and_percentile(self):
        scenario = one_group('a')
        trace = self.trace(scenario, [100.0 * (j + 1) for j in range(10)])
        self.assertEqual(evaluate_objectives(trace, scenario), (550.0, 900.0))

    def test_single_request(self):
        scenario = one_group('a')
        self.assertEqual(evaluate_objectives(self.trace(scenario, [500.0]), scenario), (500.0, 500.0))

    def test_one_pair_per_group(self):
        scenario = own_groups('a', 'b')
        self.assertEqual(len(evaluate_objectives(self.trace(scenario, [1.0, 2.0]), scenario)), 4)

    def test_empty_trace(self):
        with self.assertRaises(EmptyTrace):
            evaluate_objectives(Trace(one_group('a'), 1), one_group('a'))


class CatalogSimulationTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super(CatalogSimulationTests, cls).setUpClass()
        cls.catalog = build_catalog()
        cls.profile = build_profile(cls.catalog)
        cls.scenario = generate_scenario(cls.catalog, 2, 2, seed=5)
        spec = PeriodSpec(base_periods(cls.scenario, cls.catalog, cls.profile), alpha=0.7)
        cls.periods = spec.periods
        cls.space = SearchSpace(cls.scenario, cls.catalog, cls.profile)

    def simulate(self, solution, seed=None):
        config = SimConfig(periods=self.periods, horizon=5, noise_seed=seed)
        return simulate(solution, self.scenario, self.profile, config)

    def test_noise_is_seeded(self):
        solution = self.space.decode(self.space.random(random.Random(1)))
        first, second = self.simulate(solution, seed=42), self.simulate(solution, seed=42)
        self.assertEqual(first.tasks, second.tasks)
        self.assertNotEqual(first.tasks, self.simulate(solution, seed=43).tasks)
        self.assertEqual(self.simulate(solution).tasks, self.simulate(solution).tasks)

    def test_schedule_properties(self):
        rng = random.Random(9)
        for _ in range(20):
            solution = self.space.decode(self.space.random(rng))
            trace = self.simulate(solution, seed=rng.randint(0, 1000))
            self.assertTrue(trace.complete)

            by_key = dict(((t.group, t.request, t.network, t.subgraph), t) for t in trace.tasks)
            for task in trace.tasks:
                self.assertLessEqual(task.arrival, task.ready)
                self.assertLessEqual(task.ready, task.start)
                self.assertLess(task.start, task.finish)

                placement = solution.placements[task.network]
                sg = placement.subgraphs[task.subgraph]
                inbound = defaultdict(int)
                for b in sg.boundary_in:
                    if b.peer != HOST:
                        inbound[b.peer] += b.tensor_bytes
                for pred, size in inbound.items():
                    before = by_key[(task.group, task.request, task.network, pred)]
                    delay = comm_cost(size, before.processor, task.processor, self.profile.comm)
                    self.assertGreaterEqual(task.start, before.finish + delay - 1e-6)

                busy = [(t.start, t.finish) for t in trace.tasks if t.processor == task.processor]
                self.assertFalse(idle_overlaps(busy, task.ready, task.start))

            for processor in self.profile.processors:
                busy = sorted((t.start, t.finish) for t in trace.tasks if t.processor == processor)
                for (_, finish), (start, _) in zip(busy, busy[1:]):
                    self.assertLessEqual(finish, start)


class OracleTests(SimpleTestCase):
    """
    Compares the simulator with a brute force over every order in which the
    tasks of a single request could be dispatched.
    """

    COSTS = (
        {'a': ((1000.0, 400.0), (1500.0, 600.0)), 'b': ((800.0, 900.0), (700.0, 300.0))},
        {'a': ((300.0, 900.0), (400.0, 1200.0)), 'b': ((500.0, 450.0), (2500.0, 800.0))},
        {'a': ((1200.0, 1200.0), (200.0, 2200.0)), 'b': ((600.0, 100.0), (600.0, 100.0))},
    )

    def make_profile(self, costs):
        table = dict((name, dict((i, {'CPU': cpu, 'GPU': gpu}) for i, (cpu, gpu) in enumerate(layers)))
                     for name, layers in costs.items())
        return make_profile(table, comm=CommCostParams(),
                            nonlin={'GPU': NonLinearityParams(300.0, 10.0, 0.95)})

    def tasks(self, solution, profile):
        tasks = []
        for name, placement in solution.placements.items():
            rank = solution.priority.index(name)
            for sg, processor, config in zip(placement.subgraphs, placement.processors, placement.configs):
                inbound = defaultdict(int)
                host_delay = out_delay = None
                for b in sg.boundary_in:
                    if b.peer == HOST:
                        host_delay = comm_cost(b.tensor_bytes, profile.host, processor, profile.comm)
                    else:
                        inbound[b.peer] += b.tensor_bytes
                for b in sg.boundary_out:
                    if b.peer == HOST:
                        out_delay = comm_cost(b.tensor_bytes, processor, profile.host, profile.comm)
                tasks.append({
                    'id': (name, sg.index),
                    'network': name,
                    'key': (rank, 0, sg.index),
                    'processor': processor,
                    'duration': subgraph_time(sg, config, profile),
                    'preds': [((name, p), comm_cost(size, placement.processors[p], processor, profile.comm))
                              for p, size in sorted(inbound.items())],
                    'host': host_delay,
                    'out': out_delay,
                })
        return tasks

    def oracle(self, solution, profile):
        tasks = self.tasks(solution, profile)
        outcomes = set()
        for order in permutations(tasks):
            ready, start, finish = {}, {}, {}
            free = defaultdict(float)
            feasible = True
            for task in order:
                if any(p not in finish for p, _ in task['preds']):
                    feasible = False
                    break
                times = [finish[p] + delay for p, delay in task['preds']]
                if task['host'] is not None:
                    times.append(task['host'])
                ready[task['id']] = max(times)
                start[task['id']] = max(ready[task['id']], free[task['processor']])
                finish[task['id']] = start[task['id']] + task['duration']
                free[task['processor']] = finish[task['id']]
            if not feasible or not self.greedy(tasks, ready, start, finish):
                continue

            done = defaultdict(float)
            for task in tasks:
                if task['out'] is not None:
                    done[task['network']] = max(done[task['network']], finish[task['id']] + task['out'])
            outcomes.add(tuple(sorted(done.items())))
        return outcomes

    def greedy(self, tasks, ready, start, finish):
        # work conserving, and never starting a task while a more urgent one waits
        for x in tasks:
            for y in tasks:
                if x is y or x['processor'] != y['processor']:
                    continue
                if start[x['id']] < start[y['id']] and ready[y['id']] <= start[x['id']] and y['key'] < x['key']:
                    return False
            busy = [(start[t['id']], finish[t['id']]) for t in tasks if t['processor'] == x['processor']]
            if idle_overlaps(busy, ready[x['id']], start[x['id']]):
                return False
        return True

    def options(self, name):
        graph = chain(name, 2, tensor_bytes=256 * 1024, input_bytes=64 * 1024, output_bytes=16 * 1024)
        choices = []
        for processor in ('CPU', 'GPU'):
            choices.append((whole(graph), (processor,)))
        for processors in product(('CPU', 'GPU'), repeat=2):
            choices.append((split(graph), processors))
        return choices

    def test_matches_exhaustive_orders(self):
        cases = 0
        for costs in self.COSTS:
            profile = self.make_profile(costs)
            instances = [(own_groups('a'), [option], ['a']) for option in self.options('a')]
            for first, second in product(self.options('a'), self.options('b')):
                for priority in (['a', 'b'], ['b', 'a']):
                    instances.append((own_groups('a', 'b'), [first, second], priority))

            for scenario, options, priority in instances:
                solution = build_solution([o[0] for o in options], [o[1] for o in options], priority, profile)
                trace = run(solution, scenario, profile)
                simulated = tuple(sorted((name, trace.finishes[(g.id, 0, name)])
                                         for g in scenario.groups for name in g.networks))
                outcomes = self.oracle(solution, profile)
                self.assertEqual(len(outcomes), 1)
                expected = outcomes.pop()
                for (name, value), (other, reference) in zip(simulated, expected):
                    self.assertEqual(name, other)
                    self.assertAlmostEqual(value, reference, places=9)
                cases += 1
        self.assertGreaterEqual(cases, 200)
