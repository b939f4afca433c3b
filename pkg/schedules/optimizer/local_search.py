__license__ = 'MIT License <http://www.opensource.org/licenses/mit-license.php>'
__docformat__ = 'epytext'

import logging

from schedules.graphs import decode_mapping, decode_partition, partition_from_sets
from schedules.simulator import build_solution

logger = logging.getLogger(__name__)


def dominates(a, b):
    """
    C{a} is no worse than C{b} in every objective and better in one.
    """

    return all(x <= y for x, y in zip(a, b)) and any(x < y for x, y in zip(a, b))


def _replace(solution, name, pn, processors, evaluator):
    partitions, assignments = [], []
    for other, placement in solution.placements.items():
        if other == name:
            partitions.append(pn)
            assignments.append(processors)
        else:
            partitions.append(placement.partition)
            assignments.append(placement.processors)
    return build_solution(partitions, assignments, solution.priority, evaluator.profile,
                          evaluator.db, solution.method)


def _climb(solution, evaluator, moves):
    current = solution
    objectives = evaluator.fast(current)
    accepted = 0
    while True:
        for candidate in moves(current, evaluator):
            candidate_objectives = evaluator.fast(candidate)
            if dominates(candidate_objectives, objectives):
                current, objectives = candidate, candidate_objectives
                accepted += 1
                break
        else:
            break
    if accepted:
        logger.debug('%s accepted %d moves', moves.__name__, accepted)
    return current


def _merges(solution, evaluator):
    profile = evaluator.profile
    for name, placement in solution.placements.items():
        pn = placement.partition
        graph = pn.graph
        owner = pn.subgraph_of
        prefs = [profile.index(placement.processors[owner[layer.id]]) for layer in graph.layers]
        for a, b in pn.adjacent_pairs():
            bits = partition_from_sets(graph, pn.layer_sets)
            for i, edge in enumerate(graph.edges):
                if set((owner[edge.src], owner[edge.dst])) == set((a, b)):
                    bits[i] = 0
            merged = decode_partition(graph, bits)
            yield _replace(solution, name, merged, decode_mapping(merged, prefs, profile.processors), evaluator)


def _repositions(solution, evaluator):
    for name, placement in solution.placements.items():
        pn = placement.partition
        graph = pn.graph
        owner = pn.subgraph_of
        for edge in graph.edges:
            a, b = owner[edge.src], owner[edge.dst]
            if a == b:
                continue
            for layer, source, target in ((edge.src, a, b), (edge.dst, b, a)):
                sets = [set(s) for s in pn.layer_sets]
                sets[source].discard(layer)
                if not sets[source]:
                    continue
                sets[target].add(layer)
                wanted = [frozenset(s) for s in sets]
                moved = decode_partition(graph, partition_from_sets(graph, wanted))
                # the move must survive decoding unchanged, which rules out
                # split subgraphs and cyclic quotients
                if set(moved.layer_sets) != set(wanted):
                    continue
                processor_of = dict(zip(wanted, placement.processors))
                processors = tuple(processor_of[s] for s in moved.layer_sets)
                yield _replace(solution, name, moved, processors, evaluator)


def local_search_merge(solution, evaluator):
    """
    Merges neighbouring subgraphs while doing so improves the fast-tier
    objectives, scanning the networks in order and their producer and
    consumer pairs in topological order.

    @rtype: L{Solution}
    """

    return _climb(solution, evaluator, _merges)


def local_search_reposition(solution, evaluator):
    """
    Moves single layers across subgraph boundaries while doing so improves
    the fast-tier objectives. A moved layer runs on the processor of the
    subgraph it joins.

    @rtype: L{Solution}
    """

    return _climb(solution, evaluator, _repositions)


def local_search(solution, evaluator):
    return local_search_reposition(local_search_merge(solution, evaluator), evaluator)
