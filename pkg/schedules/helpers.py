__license__ = 'MIT License <http://www.opensource.org/licenses/mit-license.php>'
__docformat__ = 'epytext'

import csv
import json
import os
import sys
from collections import OrderedDict

from django.utils import timezone

import schedules
from schedules.catalog import Catalog
from schedules.graphs import Edge, Layer, NetworkGraph, decode_mapping, decode_partition
from schedules.exceptions import InconsistentSolution
from schedules.metrics import sweep_columns
from schedules.profiling.device import CommCostParams, DeviceProfile, NonLinearityParams, ProcessorConfig
from schedules.scenarios import ModelGroup, Scenario
from schedules.simulator import build_solution


def dump(data, path):
    """
    Writes JSON with sorted keys, so equal data always gives equal bytes.
    """

    with open(path, 'w') as handle:
        json.dump(data, handle, indent=2, sort_keys=True)
        handle.write('\n')


def load(path):
    with open(path) as handle:
        return json.load(handle)


def network_to_dict(graph):
    return {
        'name': graph.name,
        'input_bytes': graph.input_bytes,
        'output_bytes': graph.output_bytes,
        'layers': [{'id': l.id, 'op_kind': l.op_kind, 'param_bytes': l.param_bytes, 'mac_count': l.mac_count}
                   for l in graph.layers],
        'edges': [{'src': e.src, 'dst': e.dst, 'tensor_bytes': e.tensor_bytes} for e in graph.edges],
    }


def network_from_dict(data):
    return NetworkGraph(
        name=data['name'],
        layers=[Layer(l['id'], l['op_kind'], l.get('param_bytes', 0), l.get('mac_count', 0))
                for l in data['layers']],
        edges=[Edge(e['src'], e['dst'], e['tensor_bytes']) for e in data['edges']],
        input_bytes=data.get('input_bytes', 0),
        output_bytes=data.get('output_bytes', 0))


def catalog_to_dict(catalog):
    return {
        'name': catalog.name,
        'networks': [network_to_dict(g) for g in catalog],
        'seed_costs': catalog.seed_costs,
    }


def catalog_from_dict(data):
    return Catalog(
        data['name'],
        [network_from_dict(n) for n in data['networks']],
        {name: OrderedDict(sorted(costs.items())) for name, costs in data.get('seed_costs', {}).items()})


def profile_to_dict(profile):
    return {
        'processors': list(profile.processors),
        'configs': [c.key for c in profile.configs],
        'layer_costs': {
            network: {str(layer): costs for layer, costs in layers.items()}
            for network, layers in profile.layer_costs.items()},
        'nonlinearity': {
            p: {'launch': n.launch, 'dispatch': n.dispatch, 'rho_inf': n.rho_inf}
            for p, n in profile.nonlin.items()},
        'comm': {
            'bandwidth': profile.comm.bandwidth,
            'rpc_small': list(profile.comm.rpc_small),
            'rpc_large': list(profile.comm.rpc_large)},
        'quant_throughput': profile.quant_throughput,
        'host': profile.host,
    }


def profile_from_dict(data):
    return DeviceProfile(
        processors=data['processors'],
        configs=[ProcessorConfig.parse(key) for key in data['configs']],
        layer_costs={
            network: {int(layer): costs for layer, costs in layers.items()}
            for network, layers in data['layer_costs'].items()},
        nonlin={p: NonLinearityParams(**v) for p, v in data['nonlinearity'].items()},
        comm=CommCostParams(**data['comm']),
        quant_throughput=data['quant_throughput'],
        host=data['host'])


def scenario_to_dict(scenario):
    return {
        'catalog': scenario.catalog_ref,
        'seed': scenario.seed,
        'groups': [{'id': g.id, 'networks': list(g.networks)} for g in scenario.groups],
    }


def scenario_from_dict(data):
    return Scenario(
        groups=tuple(ModelGroup(g['id'], tuple(g['networks'])) for g in data['groups']),
        catalog_ref=data.get('catalog', ''),
        seed=data.get('seed', 0))


def solution_to_dict(solution, profile, objectives=None):
    """
    Genes and decoded placement of a solution. The genes alone determine
    the solution; the subgraphs are written for readers of the file.
    """

    cuts, prefs, priority = solution.genes(profile)
    networks = OrderedDict()
    for name, placement in solution.placements.items():
        networks[name] = {
            'cut_bits': cuts[name],
            'layer_prefs': prefs[name],
            'subgraphs': [
                {'layers': list(sg.layer_ids), 'processor': processor, 'config': config.key}
                for sg, processor, config in zip(placement.subgraphs, placement.processors, placement.configs)],
        }
    return {
        'method': solution.method,
        'networks': networks,
        'priority': list(solution.priority),
        'objectives': list(objectives) if objectives is not None else None,
    }


def solution_from_dict(data, scenario, graphs, profile, db=None):
    """
    Rebuilds a solution from the genes of a solution file.

    @raise InconsistentSolution: the file does not cover exactly the
        scenario's networks
    """

    networks = data['networks']
    if set(networks) != set(scenario.networks):
        raise InconsistentSolution('solution networks do not match the scenario')

    partitions, assignments = [], []
    for name in scenario.networks:
        pn = decode_partition(graphs[name], networks[name]['cut_bits'])
        partitions.append(pn)
        assignments.append(decode_mapping(pn, networks[name]['layer_prefs'], profile.processors))
    return build_solution(partitions, assignments, data['priority'], profile, db, data.get('method', 'ga'))


def write_trace(trace, path):
    with open(path, 'w', newline='') as handle:
        trace.export(handle)


def write_archive(out_dir, members, profile):
    """
    Writes one JSON file per archive member and an index of their
    objectives.

    @type  members: sequence
    @param members: pairs of solution and objectives
    @rtype: list
    @return: paths of the solution files
    """

    os.makedirs(out_dir, exist_ok=True)
    paths = []
    rows = []
    for i, (solution, objectives) in enumerate(members):
        filename = 'solution-%03d.json' % i
        dump(solution_to_dict(solution, profile, objectives), os.path.join(out_dir, filename))
        paths.append(os.path.join(out_dir, filename))
        rows.append([filename, solution.method, solution.subgraph_count] + [repr(v) for v in objectives or ()])

    width = max([len(m[1] or ()) for m in members] or [0])
    with open(os.path.join(out_dir, 'index.csv'), 'w', newline='') as handle:
        writer = csv.writer(handle)
        writer.writerow(['file', 'method', 'subgraphs'] + ['objective_%d' % i for i in range(width)])
        writer.writerows(rows)
    return paths


def load_archive(path):
    """
    Solution file contents of a solution file or an archive directory.
    """

    if os.path.isdir(path):
        names = sorted(n for n in os.listdir(path) if n.startswith('solution-') and n.endswith('.json'))
        return [load(os.path.join(path, n)) for n in names]
    return [load(path)]


def write_sweep(path, scenario, points):
    """
    @type  points: mapping
    @param points: method label to the L{SweepPoint}s of its solutions
    """

    with open(path, 'w', newline='') as handle:
        writer = csv.writer(handle)
        writer.writerow(['method'] + sweep_columns(scenario))
        for method, method_points in points.items():
            for point in method_points:
                writer.writerow([method] + ['%.6g' % v for v in point.row()])


def write_summary(path, saturation, grid):
    with open(path, 'w', newline='') as handle:
        writer = csv.writer(handle)
        writer.writerow(['method', 'saturation_alpha'])
        for method, alpha in saturation.items():
            writer.writerow([method, '%g' % alpha if alpha is not None else 'above %g' % grid.stop])


def write_manifest(out_dir, command, inputs=None, alphas=None, seeds=None, started=None):
    """
    Records how an output directory was produced.
    """

    os.makedirs(out_dir, exist_ok=True)
    dump({
        'command': command,
        'argv': sys.argv[1:],
        'inputs': inputs or {},
        'alphas': alphas or [],
        'seeds': seeds or {},
        'version': schedules.__version__,
        'started': (started or timezone.now()).isoformat(),
        'finished': timezone.now().isoformat(),
    }, os.path.join(out_dir, 'manifest.json'))
