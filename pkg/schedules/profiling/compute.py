__license__ = 'MIT License <http://www.opensource.org/licenses/mit-license.php>'
__docformat__ = 'epytext'

import hashlib
import json

from schedules.exceptions import NoConfiguration
from schedules.graphs import decode_partition, subgraph_hash


def priced_hash(sg, costs, params):
    """
    Database key of a subgraph: its content hash together with the layer
    times and the cost model parameters it is priced with. Equally shaped
    subgraphs share a key only when they also cost the same.

    @type  costs: sequence
    @param costs: layer times in microseconds, in any order
    @type  params: L{NonLinearityParams}

    @rtype: string
    @return: hex encoded SHA-256 digest
    """

    payload = json.dumps(
        [subgraph_hash(sg, sg.graph), sorted(costs), [params.launch, params.dispatch, params.rho_inf]],
        separators=(',', ':'))
    return hashlib.sha256(payload.encode('utf-8')).hexdigest()


def subgraph_time(sg, config, profile, db=None):
    """
    Execution time of a subgraph under one processor configuration.

    The layer times are summed and contracted by
    C{rho(n) = rho_inf + (1 - rho_inf) / n}, then the processor's launch cost
    and a dispatch cost per layer are added. With a database the result is
    stored under L{priced_hash} and reused for equally shaped subgraphs
    with equal layer times.

    @type  sg: L{Subgraph}
    @type  config: L{ProcessorConfig}
    @type  profile: L{DeviceProfile}
    @type  db: L{ProfileDB}

    @rtype: float
    @return: microseconds
    """

    costs = [profile.layer_cost(sg.network, l, config) for l in sg.layer_ids]
    params = profile.nonlinearity(config.processor)

    digest = None
    if db is not None and sg.graph is not None:
        digest = priced_hash(sg, costs, params)
        cached = db.get(digest, config)
        if cached is not None:
            return cached

    n = len(sg)
    time = params.launch + n * params.dispatch + params.rho(n) * sum(costs)

    if digest is not None:
        db.put(digest, config, time)
    return time


def best_config(sg, processor, profile, db=None):
    """
    @rtype: tuple
    @return: the fastest configuration of the processor and its time
    """

    configs = profile.configs_for(processor)
    if not configs:
        raise NoConfiguration('no configuration available for %s' % processor)

    best = None
    for config in configs:
        time = subgraph_time(sg, config, profile, db)
        if best is None or time < best[1]:
            best = (config, time)
    return best


def whole_network(graph):
    return decode_partition(graph, [0] * len(graph.edges)).subgraphs[0]


def model_time(graph, processor, profile, db=None):
    return best_config(whole_network(graph), processor, profile, db)[1]


def fastest_processor(graph, profile, db=None):
    """
    Processor running the unpartitioned network fastest; ties go to the
    processor listed first in the profile.
    """

    best = None
    for processor in profile.processors:
        if not profile.configs_for(processor):
            continue
        time = model_time(graph, processor, profile, db)
        if best is None or time < best[1]:
            best = (processor, time)
    if best is None:
        raise NoConfiguration('the profile has no configurations')
    return best[0]
