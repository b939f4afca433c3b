__license__ = 'MIT License <http://www.opensource.org/licenses/mit-license.php>'
__docformat__ = 'epytext'

import json
import logging
import math
import os
import random
import zlib
from collections import OrderedDict

from schedules.conf import settings
from schedules.graphs import Edge, Layer, NetworkGraph
from schedules.profiling.device import (
    MiB, CommCostParams, DeviceProfile, NonLinearityParams, ProcessorConfig, default_nonlinearity)

logger = logging.getLogger(__name__)

SEED_MODELS = os.path.join(os.path.dirname(__file__), 'fixtures', 'models.json')

# operator tags of synthetic layers
OPS = ('conv2d', 'conv2d', 'depthwise_conv2d', 'batchnorm', 'relu', 'pool')

SKIP_EVERY = 5


class Catalog(object):
    """
    Networks available to scenarios, together with their whole-model seed
    times in microseconds per configuration key.
    """

    def __init__(self, name, networks, seed_costs=None):
        self.name = name
        self.networks = OrderedDict((n.name, n) for n in networks)
        self.seed_costs = seed_costs or {}

    def __len__(self):
        return len(self.networks)

    def __iter__(self):
        return iter(self.networks.values())

    def __getitem__(self, name):
        return self.networks[name]

    def __contains__(self, name):
        return name in self.networks

    @property
    def names(self):
        return list(self.networks)


def load_seed_models(path=SEED_MODELS):
    with open(path) as handle:
        return json.load(handle)


def _seed_times(entry):
    times = entry['times_ms']
    resolved = OrderedDict()
    for key, value in times.items():
        if value is None:
            # unsupported execution providers fall back to the default kernels
            config = ProcessorConfig.parse(key)
            value = times['%s/default/%s' % (config.processor, config.dtype)]
        resolved[key] = value * 1000.0
    return resolved


def synthesize_network(entry):
    """
    Builds a layer DAG for a seed model: a chain of layers with one skip
    connection every few layers. The layer count grows with the model's
    MACs; MACs, parameters and tensor sizes are drawn from a generator
    seeded by the model name, so every run yields the same network.

    @type  entry: dict
    @param entry: seed model with C{name}, C{macs} and C{params}

    @rtype: L{NetworkGraph}
    """

    name = entry['name']
    rng = random.Random(zlib.crc32(name.encode('utf-8')))
    n = 6 + int(round(2 * math.log10(max(entry['macs'] / 1e6, 1.0))))

    mac_weights = [rng.uniform(0.5, 1.5) for _ in range(n)]
    param_weights = [rng.uniform(0.5, 1.5) for _ in range(n)]
    mac_total = sum(mac_weights)
    param_total = sum(param_weights)

    skip_targets = set(range(SKIP_EVERY, n, SKIP_EVERY))
    layers = []
    for i in range(n):
        layers.append(Layer(
            id=i,
            op_kind='add' if i in skip_targets else rng.choice(OPS),
            param_bytes=int(round(2 * entry['params'] * param_weights[i] / param_total)),
            mac_count=int(round(entry['macs'] * mac_weights[i] / mac_total))))

    outputs = [int(rng.uniform(1 / 16.0, 2.0) * MiB) for _ in range(n)]
    edges = [Edge(i, i + 1, outputs[i]) for i in range(n - 1)]
    edges += [Edge(i - SKIP_EVERY, i, outputs[i - SKIP_EVERY]) for i in sorted(skip_targets)]

    return NetworkGraph(
        name=name,
        layers=layers,
        edges=edges,
        input_bytes=int(rng.uniform(0.25, 1.5) * MiB),
        output_bytes=int(rng.uniform(1 / 64.0, 1.0) * MiB))


def build_catalog(seed_models=None, name='seed'):
    """
    Synthesizes the seed catalog from the fixture of seed models.

    @rtype: L{Catalog}
    """

    if seed_models is None:
        seed_models = load_seed_models()
    networks = [synthesize_network(entry) for entry in seed_models]
    seed_costs = {entry['name']: _seed_times(entry) for entry in seed_models}
    return Catalog(name, networks, seed_costs)


def build_profile(catalog, nonlin=None, comm=None, processors=None, quant_throughput=None, host=None):
    """
    Derives per-layer costs from the catalog's whole-model seed times.

    Layer costs are the seed time spread over the layers by MAC share,
    scaled so that the unpartitioned network reproduces the seed time
    exactly under the processor's non-linearity parameters.

    @rtype: L{DeviceProfile}
    """

    nonlin = nonlin or default_nonlinearity()
    configs = OrderedDict()
    for times in catalog.seed_costs.values():
        for key in times:
            configs.setdefault(key, ProcessorConfig.parse(key))

    if processors is None:
        present = set(c.processor for c in configs.values())
        processors = [p for p in settings.PROCESSORS if p in present]
        processors += sorted(present - set(processors))

    layer_costs = {}
    for graph in catalog:
        n = len(graph.layers)
        macs = [max(layer.mac_count, 1) for layer in graph.layers]
        total = float(sum(macs))
        costs = {layer.id: {} for layer in graph.layers}

        for key, seed in catalog.seed_costs[graph.name].items():
            params = nonlin.get(configs[key].processor, NonLinearityParams())
            budget = (seed - params.launch - n * params.dispatch) / params.rho(n)
            if budget <= 0:
                logger.warning('%s on %s: seed time %.1f us below fixed overheads', graph.name, key, seed)
                budget = 0.01 * seed
            for layer, mac in zip(graph.layers, macs):
                costs[layer.id][key] = budget * mac / total

        layer_costs[graph.name] = costs

    return DeviceProfile(
        processors=processors,
        configs=list(configs.values()),
        layer_costs=layer_costs,
        nonlin=nonlin,
        comm=comm or CommCostParams.defaults(),
        quant_throughput=quant_throughput or settings.QUANT_THROUGHPUT,
        host=host or settings.HOST)
