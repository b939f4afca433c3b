__license__ = 'MIT License <http://www.opensource.org/licenses/mit-license.php>'
__docformat__ = 'epytext'

import csv
import heapq
import logging
from collections import OrderedDict, defaultdict
from dataclasses import dataclass, field, replace

import numpy as np

from schedules.conf import settings
from schedules.exceptions import EmptyTrace, InconsistentSolution
from schedules.graphs import HOST, partition_from_sets
from schedules.metrics import makespans, nearest_rank
from schedules.profiling.comm import comm_cost, quant_cost
from schedules.profiling.compute import best_config, subgraph_time
from schedules.profiling.device import MiB

logger = logging.getLogger(__name__)

TRACE_COLUMNS = ('group', 'request', 'network', 'subgraph', 'processor', 'ready', 'start', 'finish', 'arrival')

# event kinds, in the order they are applied within one timestamp
ARRIVAL, DELIVER, OUTPUT, QUANT_DONE, EXEC_DONE = range(5)


@dataclass(frozen=True)
class Placement:
    partition: object
    processors: tuple
    configs: tuple

    @property
    def subgraphs(self):
        return self.partition.subgraphs


@dataclass(frozen=True, eq=False)
class Solution:
    """
    A decoded schedule: how every network is partitioned, where each
    subgraph runs with which configuration, and the network priorities
    (first name = highest priority).
    """

    placements: OrderedDict
    priority: tuple
    method: str = 'ga'

    @property
    def subgraph_count(self):
        return sum(len(p.subgraphs) for p in self.placements.values())

    def genes(self, profile):
        """
        Cut bits, layer preferences and priority indices reproducing this
        solution when decoded.
        """

        cuts, prefs = OrderedDict(), OrderedDict()
        for name, placement in self.placements.items():
            graph = placement.partition.graph
            cuts[name] = partition_from_sets(graph, placement.partition.layer_sets)
            owner = placement.partition.subgraph_of
            prefs[name] = [profile.index(placement.processors[owner[layer.id]]) for layer in graph.layers]
        names = list(self.placements)
        return cuts, prefs, [names.index(n) for n in self.priority]


def build_solution(partitions, assignments, priority, profile, db=None, method='ga'):
    """
    Completes partitions and processor assignments with the fastest
    configuration of every subgraph's processor.
    """

    placements = OrderedDict()
    for pn, processors in zip(partitions, assignments):
        configs = tuple(best_config(sg, p, profile, db)[0] for sg, p in zip(pn.subgraphs, processors))
        placements[pn.network] = Placement(pn, tuple(processors), configs)
    return Solution(placements, tuple(priority), method)


@dataclass(frozen=True)
class SimConfig:
    """
    @ivar horizon: requests issued per model group
    @ivar periods: request period per group id, in microseconds
    @ivar noise_seed: seed of the execution time jitter, C{None} disables it
    @ivar noise_sigma: relative jitter per processor
    @ivar alloc_overhead: microseconds added to every task
    @ivar copy_overhead: microseconds per MiB of a task's inbound tensors
    """

    periods: dict
    horizon: int = field(default_factory=lambda: settings.HORIZON)
    noise_seed: int = None
    noise_sigma: dict = field(default_factory=lambda: dict(settings.NOISE_SIGMA))
    alloc_overhead: float = field(default_factory=lambda: settings.ALLOC_OVERHEAD)
    copy_overhead: float = field(default_factory=lambda: settings.COPY_OVERHEAD)

    def __post_init__(self):
        if self.horizon < 1:
            raise ValueError('the horizon must cover at least one request')
        if any(p <= 0 for p in self.periods.values()):
            raise ValueError('periods must be positive')
        if any(s < 0 for s in self.noise_sigma.values()):
            raise ValueError('noise sigma must not be negative')

    def sigma(self, processor):
        return self.noise_sigma.get(processor, settings.NOISE_SIGMA_DEFAULT)

    def with_noise(self, seed):
        return replace(self, noise_seed=seed)


@dataclass(frozen=True)
class TaskRecord:
    group: int
    request: int
    network: str
    subgraph: int
    processor: str
    ready: float
    start: float
    finish: float
    arrival: float


class Trace(object):
    """
    Timestamps of one simulation run: every executed task, the arrival of
    every request and, per request and network, the anchor and completion
    times.
    """

    def __init__(self, scenario, horizon):
        self.scenario = scenario
        self.horizon = horizon
        self.tasks = []
        self.arrivals = {}
        self.starts = {}
        self.finishes = {}

    def __len__(self):
        return len(self.tasks)

    @property
    def complete(self):
        expected = self.horizon * len(self.scenario.networks)
        return len(self.finishes) == expected

    def first_start(self, group_id, request, network):
        starts = [t.start for t in self.tasks
                  if t.group == group_id and t.request == request and t.network == network]
        return min(starts)

    def export(self, handle):
        writer = csv.writer(handle)
        writer.writerow(TRACE_COLUMNS)
        for task in self.tasks:
            writer.writerow([
                task.group, task.request, task.network, task.subgraph, task.processor,
                repr(task.ready), repr(task.start), repr(task.finish), repr(task.arrival)])


class _Job(object):
    __slots__ = ('group', 'request', 'network', 'index', 'key', 'pending', 'quant_bytes', 'ready')

    def __init__(self, group, request, network, index, key, pending):
        self.group = group
        self.request = request
        self.network = network
        self.index = index
        self.key = key
        self.pending = pending
        self.quant_bytes = 0
        self.ready = None


class _Stage(object):
    # static description of one subgraph, shared by all its requests
    __slots__ = ('processor', 'dtype', 'time', 'host_in', 'host_out', 'preds', 'succs', 'inbound')

    def __init__(self, processor, dtype, time):
        self.processor = processor
        self.dtype = dtype
        self.time = time
        self.host_in = None
        self.host_out = None
        self.preds = 0
        self.succs = []
        self.inbound = 0


def _stages(solution, profile, db):
    stages = {}
    for name, placement in solution.placements.items():
        network_stages = []
        for sg, processor, config in zip(placement.subgraphs, placement.processors, placement.configs):
            stage = _Stage(processor, config.dtype, subgraph_time(sg, config, profile, db))
            stage.inbound = sg.inbound_bytes
            stage.preds = len(sg.predecessors)
            for b in sg.boundary_in:
                if b.peer == HOST:
                    stage.host_in = b.tensor_bytes
            outbound = defaultdict(int)
            for b in sg.boundary_out:
                if b.peer == HOST:
                    stage.host_out = b.tensor_bytes
                else:
                    outbound[b.peer] += b.tensor_bytes
            stage.succs = sorted(outbound.items())
            network_stages.append(stage)
        stages[name] = network_stages
    return stages


def _check(solution, scenario):
    names = set(scenario.networks)
    if set(solution.placements) != names:
        raise InconsistentSolution('solution networks do not match the scenario')
    if sorted(solution.priority) != sorted(names):
        raise InconsistentSolution('priority is not a permutation of the scenario networks')
    for name, placement in solution.placements.items():
        if len(placement.processors) != len(placement.subgraphs) or len(placement.configs) != len(placement.subgraphs):
            raise InconsistentSolution('%s has unassigned subgraphs' % name)


def simulate(solution, scenario, profile, config, db=None):
    """
    Runs a solution through a discrete-event model of the runtime.

    Requests of a group arrive every period, one per network of the group.
    A subgraph task becomes ready once the outputs of all its predecessors
    reached its processor; tensors produced in another data type are
    converted first on the processor's conversion lane. Each processor
    executes one task at a time without preemption and always picks the
    ready task of the highest priority network, then the earliest
    request, then the first subgraph in topological order.

    @type  solution: L{Solution}
    @type  scenario: L{Scenario}
    @type  profile: L{DeviceProfile}
    @type  config: L{SimConfig}

    @rtype: L{Trace}
    """

    _check(solution, scenario)
    stages = _stages(solution, profile, db)
    rank = {name: i for i, name in enumerate(solution.priority)}
    host = profile.host
    rng = np.random.default_rng(config.noise_seed) if config.noise_seed is not None else None

    trace = Trace(scenario, config.horizon)
    events = []
    counter = [0]

    def push(time, kind, payload):
        counter[0] += 1
        heapq.heappush(events, (time, kind, counter[0], payload))

    for group in scenario.groups:
        try:
            period = config.periods[group.id]
        except KeyError:
            raise InconsistentSolution('no period given for group %s' % group.id)
        for j in range(config.horizon):
            push(j * period, ARRIVAL, (group, j))

    jobs = {}
    outputs = {}
    exec_queue = defaultdict(list)
    quant_queue = defaultdict(list)
    exec_busy = set()
    quant_busy = set()

    def deliver(job, now, quant_bytes=0):
        job.pending -= 1
        job.quant_bytes += quant_bytes
        if job.pending == 0:
            processor = stages[job.network][job.index].processor
            if job.quant_bytes:
                heapq.heappush(quant_queue[processor], (job.key, job))
            else:
                job.ready = now
                heapq.heappush(exec_queue[processor], (job.key, job))

    while events:
        now = events[0][0]
        while events and events[0][0] == now:
            _, kind, _, payload = heapq.heappop(events)

            if kind == ARRIVAL:
                group, j = payload
                trace.arrivals[(group.id, j)] = now
                for name in group.networks:
                    network_stages = stages[name]
                    outputs[(group.id, j, name)] = sum(1 for s in network_stages if s.host_out is not None)
                    trace.starts[(group.id, j, name)] = now
                    for index, stage in enumerate(network_stages):
                        pending = stage.preds + (1 if stage.host_in is not None else 0)
                        job = _Job(group.id, j, name, index, (rank[name], j, index), pending)
                        jobs[(group.id, j, name, index)] = job
                        if stage.host_in is not None:
                            delay = comm_cost(stage.host_in, host, stage.processor, profile.comm)
                            push(now + delay, DELIVER, (job, 0))

            elif kind == DELIVER:
                job, quant_bytes = payload
                deliver(job, now, quant_bytes)

            elif kind == OUTPUT:
                key = payload
                outputs[key] -= 1
                if outputs[key] == 0:
                    trace.finishes[key] = now

            elif kind == QUANT_DONE:
                processor, job = payload
                quant_busy.discard(processor)
                job.ready = now
                heapq.heappush(exec_queue[processor], (job.key, job))

            elif kind == EXEC_DONE:
                processor, job, start = payload
                exec_busy.discard(processor)
                stage = stages[job.network][job.index]
                trace.tasks.append(TaskRecord(
                    job.group, job.request, job.network, job.index, processor,
                    job.ready, start, now, trace.arrivals[(job.group, job.request)]))
                for succ, size in stage.succs:
                    target = stages[job.network][succ]
                    delay = comm_cost(size, processor, target.processor, profile.comm)
                    quant_bytes = size if target.dtype != stage.dtype else 0
                    push(now + delay, DELIVER, (jobs[(job.group, job.request, job.network, succ)], quant_bytes))
                if stage.host_out is not None:
                    delay = comm_cost(stage.host_out, processor, host, profile.comm)
                    push(now + delay, OUTPUT, (job.group, job.request, job.network))

        for processor in profile.processors:
            if processor not in quant_busy and quant_queue[processor]:
                _, job = heapq.heappop(quant_queue[processor])
                quant_busy.add(processor)
                push(now + quant_cost(job.quant_bytes, profile.quant_throughput), QUANT_DONE, (processor, job))

            if processor not in exec_busy and exec_queue[processor]:
                _, job = heapq.heappop(exec_queue[processor])
                stage = stages[job.network][job.index]
                factor = 1.0
                if rng is not None:
                    sigma = config.sigma(processor)
                    if sigma > 0:
                        factor = float(rng.lognormal(0.0, sigma))
                duration = (stage.time * factor + config.alloc_overhead
                            + config.copy_overhead * stage.inbound / MiB)
                exec_busy.add(processor)
                push(now + duration, EXEC_DONE, (processor, job, now))

    return trace


def evaluate_objectives(trace, scenario):
    """
    Average and 90th percentile makespan of every group, in group order.

    @rtype: tuple
    @return: 2N objectives to minimize
    """

    if not trace.finishes:
        raise EmptyTrace('the trace holds no finished request')

    objectives = []
    for group in scenario.groups:
        values = makespans(trace, group)
        objectives.append(float(np.mean(values)))
        objectives.append(float(nearest_rank(values, 90)))
    return tuple(objectives)
