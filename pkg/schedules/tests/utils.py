from schedules.graphs import Edge, Layer, NetworkGraph, decode_partition
from schedules.profiling.device import CommCostParams, DeviceProfile, ProcessorConfig
from schedules.scenarios import ModelGroup, Scenario

BACKENDS = {'CPU': 'default', 'GPU': 'qnn', 'NPU': 'qnn'}


def chain(name, n, tensor_bytes=1 << 20, input_bytes=0, output_bytes=0):
    return NetworkGraph(
        name=name,
        layers=[Layer(i, 'conv2d', 1000, 1000) for i in range(n)],
        edges=[Edge(i, i + 1, tensor_bytes) for i in range(n - 1)],
        input_bytes=input_bytes,
        output_bytes=output_bytes)


def free_comm():
    return CommCostParams(bandwidth=1e18, rpc_small=(0.0, 0.0), rpc_large=(0.0, 0.0))


def config(processor, dtype='fp16'):
    return ProcessorConfig(processor, BACKENDS.get(processor, 'default'), dtype)


def make_profile(costs, processors=('CPU', 'GPU'), dtypes=None, nonlin=None, comm=None, host='CPU',
                 quant_throughput=5000.0):
    """
    Profile with one configuration per processor.

    @param costs: network name to layer id to processor to microseconds
    """

    dtypes = dtypes or {}
    configs = [config(p, dtypes.get(p, 'fp16')) for p in processors]
    by_processor = dict((c.processor, c) for c in configs)
    layer_costs = {}
    for network, layers in costs.items():
        layer_costs[network] = {}
        for layer, times in layers.items():
            layer_costs[network][layer] = dict((by_processor[p].key, t) for p, t in times.items())
    return DeviceProfile(
        processors=processors,
        configs=configs,
        layer_costs=layer_costs,
        nonlin={} if nonlin is None else nonlin,
        comm=comm or free_comm(),
        quant_throughput=quant_throughput,
        host=host)


def one_group(*names):
    return Scenario(groups=(ModelGroup(0, tuple(names)),))


def own_groups(*names):
    return Scenario(groups=tuple(ModelGroup(i, (name,)) for i, name in enumerate(names)))


def whole(graph):
    return decode_partition(graph, [0] * len(graph.edges))


def split(graph):
    return decode_partition(graph, [1] * len(graph.edges))
