__license__ = 'MIT License <http://www.opensource.org/licenses/mit-license.php>'
__docformat__ = 'epytext'

import hashlib
import json
from collections import Counter, namedtuple
from dataclasses import dataclass, field
from functools import cached_property

import networkx as nx

from schedules.exceptions import InvalidChromosome

# endpoint of client tensors, resolved to the profile's host processor
HOST = 'host'

Violation = namedtuple('Violation', 'code message')

Boundary = namedtuple('Boundary', 'edge peer tensor_bytes')
Boundary.__doc__ = """
A tensor crossing a subgraph boundary. C{edge} is C{None} for client
input or output, in which case C{peer} is L{HOST}; otherwise C{peer} is
the topological index of the producing or consuming subgraph.
"""


@dataclass(frozen=True)
class Layer:
    id: int
    op_kind: str
    param_bytes: int = 0
    mac_count: int = 0


@dataclass(frozen=True)
class Edge:
    src: int
    dst: int
    tensor_bytes: int


@dataclass(frozen=True, eq=False)
class NetworkGraph:
    """
    A DAG of layers. Edges are kept in canonical C{(src, dst)} order, which
    fixes the position of every partition gene; layers keep the order they
    were given in, which fixes the position of every mapping gene.
    """

    name: str
    layers: tuple
    edges: tuple
    input_bytes: int = 0
    output_bytes: int = 0

    def __post_init__(self):
        object.__setattr__(self, 'layers', tuple(self.layers))
        object.__setattr__(self, 'edges', tuple(sorted(self.edges, key=lambda e: (e.src, e.dst))))

    @cached_property
    def position(self):
        return {layer.id: i for i, layer in enumerate(self.layers)}

    @cached_property
    def by_id(self):
        return {layer.id: layer for layer in self.layers}

    @cached_property
    def digraph(self):
        g = nx.DiGraph()
        g.add_nodes_from(layer.id for layer in self.layers)
        for edge in self.edges:
            g.add_edge(edge.src, edge.dst, tensor_bytes=edge.tensor_bytes)
        return nx.freeze(g)

    @cached_property
    def sources(self):
        return frozenset(n for n in self.digraph if self.digraph.in_degree(n) == 0)

    @cached_property
    def sinks(self):
        return frozenset(n for n in self.digraph if self.digraph.out_degree(n) == 0)

    @cached_property
    def inbound(self):
        found = {layer.id: [] for layer in self.layers}
        for edge in self.edges:
            found.setdefault(edge.dst, []).append(edge)
        return found

    @cached_property
    def digests(self):
        # memo of subgraph_hash, keyed by layer set
        return {}


@dataclass(frozen=True)
class Subgraph:
    network: str
    index: int
    layer_ids: tuple
    boundary_in: tuple = ()
    boundary_out: tuple = ()
    graph: NetworkGraph = field(default=None, compare=False, repr=False)

    def __len__(self):
        return len(self.layer_ids)

    @property
    def predecessors(self):
        return sorted(set(b.peer for b in self.boundary_in if b.peer != HOST))

    @property
    def successors(self):
        return sorted(set(b.peer for b in self.boundary_out if b.peer != HOST))

    @property
    def inbound_bytes(self):
        return sum(b.tensor_bytes for b in self.boundary_in)


@dataclass(frozen=True, eq=False)
class PartitionedNetwork:
    graph: NetworkGraph
    subgraphs: tuple = field(default_factory=tuple)

    @property
    def network(self):
        return self.graph.name

    @cached_property
    def subgraph_of(self):
        return {l: sg.index for sg in self.subgraphs for l in sg.layer_ids}

    @cached_property
    def layer_sets(self):
        return tuple(frozenset(sg.layer_ids) for sg in self.subgraphs)

    def adjacent_pairs(self):
        """
        Producer/consumer pairs of the quotient DAG, in ascending order.
        """
        pairs = set()
        for sg in self.subgraphs:
            for succ in sg.successors:
                pairs.add((sg.index, succ))
        return sorted(pairs)


def validate_network(graph):
    """
    Checks the structural invariants of a network and reports every breach
    instead of raising.

    @type  graph: L{NetworkGraph}
    @param graph: network to check

    @rtype: list
    @return: list of L{Violation}s, empty when the network is well-formed
    """

    violations = []

    if not graph.layers:
        violations.append(Violation('empty', 'network %s has no layers' % graph.name))
        return violations

    seen = set()
    for layer in graph.layers:
        if layer.id in seen:
            violations.append(Violation('duplicate-id', 'layer id %s occurs twice' % layer.id))
        seen.add(layer.id)
        if layer.param_bytes < 0 or layer.mac_count < 0:
            violations.append(Violation('negative-size', 'layer %s has a negative size' % layer.id))

    pairs = set()
    for edge in graph.edges:
        if edge.src not in seen or edge.dst not in seen:
            violations.append(Violation('dangling-edge', 'edge %s -> %s references an unknown layer' % (edge.src, edge.dst)))
        if edge.src == edge.dst:
            violations.append(Violation('self-loop', 'edge %s -> %s is a self-loop' % (edge.src, edge.dst)))
        if (edge.src, edge.dst) in pairs:
            violations.append(Violation('duplicate-edge', 'edge %s -> %s occurs twice' % (edge.src, edge.dst)))
        if edge.tensor_bytes <= 0:
            violations.append(Violation('empty-tensor', 'edge %s -> %s carries no bytes' % (edge.src, edge.dst)))
        pairs.add((edge.src, edge.dst))

    g = nx.DiGraph()
    g.add_nodes_from(seen)
    g.add_edges_from((s, d) for (s, d) in pairs if s != d and s in seen and d in seen)
    if not nx.is_directed_acyclic_graph(g):
        cycle = [u for u, _ in nx.find_cycle(g)]
        violations.append(Violation('cycle', 'layers %s form a cycle' % ' -> '.join(map(str, cycle))))
    elif not nx.is_weakly_connected(g):
        violations.append(Violation('disconnected', 'network %s is not weakly connected' % graph.name))

    return violations


def _merge_cycles(quotient, groups):
    # every strongly connected set of components collapses into one group
    condensed = nx.condensation(quotient)
    merged = []
    for scc in sorted(condensed.nodes, key=lambda n: min(condensed.nodes[n]['members'])):
        members = condensed.nodes[scc]['members']
        merged.append(frozenset().union(*(groups[m] for m in members)))
    return merged


def _quotient(groups, edges):
    owner = {l: i for i, group in enumerate(groups) for l in group}
    quotient = nx.DiGraph()
    quotient.add_nodes_from(range(len(groups)))
    for edge in edges:
        a, b = owner[edge.src], owner[edge.dst]
        if a != b:
            quotient.add_edge(a, b)
    return quotient


def decode_partition(graph, cut_bits):
    """
    Turns the partition genes of a network into subgraphs.

    Subgraphs are the weakly connected components left after removing the
    cut edges. Components lying on a cycle of the quotient graph are merged
    until the quotient graph is acyclic, so every bit pattern decodes.

    @type  graph: L{NetworkGraph}
    @type  cut_bits: sequence
    @param cut_bits: one bit per edge in canonical order, 1 meaning cut

    @rtype: L{PartitionedNetwork}
    """

    if len(cut_bits) != len(graph.edges):
        raise InvalidChromosome(
            '%s has %d edges but %d partition genes' % (graph.name, len(graph.edges), len(cut_bits)))

    kept = nx.Graph()
    kept.add_nodes_from(layer.id for layer in graph.layers)
    kept.add_edges_from((e.src, e.dst) for e, bit in zip(graph.edges, cut_bits) if not bit)

    position = graph.position
    groups = sorted(
        (frozenset(c) for c in nx.connected_components(kept)),
        key=lambda c: min(position[l] for l in c))

    quotient = _quotient(groups, graph.edges)
    while not nx.is_directed_acyclic_graph(quotient):
        groups = _merge_cycles(quotient, groups)
        quotient = _quotient(groups, graph.edges)

    order = list(nx.lexicographical_topological_sort(
        quotient, key=lambda i: min(position[l] for l in groups[i])))
    groups = [groups[i] for i in order]
    return _build(graph, groups)


def _build(graph, groups):
    owner = {l: i for i, group in enumerate(groups) for l in group}
    inbound = [[] for _ in groups]
    outbound = [[] for _ in groups]

    for edge in graph.edges:
        a, b = owner[edge.src], owner[edge.dst]
        if a != b:
            outbound[a].append(Boundary(edge, b, edge.tensor_bytes))
            inbound[b].append(Boundary(edge, a, edge.tensor_bytes))

    subgraphs = []
    for i, group in enumerate(groups):
        if group & graph.sources:
            inbound[i].insert(0, Boundary(None, HOST, graph.input_bytes))
        if group & graph.sinks:
            outbound[i].append(Boundary(None, HOST, graph.output_bytes))
        subgraphs.append(Subgraph(
            network=graph.name,
            index=i,
            layer_ids=tuple(sorted(group, key=graph.position.__getitem__)),
            boundary_in=tuple(inbound[i]),
            boundary_out=tuple(outbound[i]),
            graph=graph))

    return PartitionedNetwork(graph=graph, subgraphs=tuple(subgraphs))


def partition_from_sets(graph, layer_sets):
    """
    Returns the cut bits which separate exactly the given layer sets.
    """

    owner = {l: i for i, group in enumerate(layer_sets) for l in group}
    return [int(owner[e.src] != owner[e.dst]) for e in graph.edges]


def decode_mapping(pn, layer_prefs, processors):
    """
    Assigns every subgraph the processor most of its layers vote for. Ties
    go to the processor listed first.

    @type  pn: L{PartitionedNetwork}
    @type  layer_prefs: sequence
    @param layer_prefs: processor index per layer, in layer order
    @type  processors: sequence
    @param processors: processor names, indexed by the preferences

    @rtype: tuple
    @return: processor name per subgraph
    """

    graph = pn.graph
    if len(layer_prefs) != len(graph.layers):
        raise InvalidChromosome(
            '%s has %d layers but %d mapping genes' % (graph.name, len(graph.layers), len(layer_prefs)))
    for pref in layer_prefs:
        if not 0 <= pref < len(processors):
            raise InvalidChromosome('processor index %s out of range' % pref)

    assignment = []
    for sg in pn.subgraphs:
        votes = Counter(layer_prefs[graph.position[l]] for l in sg.layer_ids)
        winner = min(votes, key=lambda p: (-votes[p], p))
        assignment.append(processors[winner])
    return tuple(assignment)


def _digest(*parts):
    payload = json.dumps(parts, separators=(',', ':'), sort_keys=True)
    return hashlib.sha256(payload.encode('utf-8')).hexdigest()


def subgraph_hash(sg, graph):
    """
    Content hash of a subgraph, built bottom-up like a Merkle tree. Layer
    ids never enter the hash, so equally shaped subgraphs share a digest.

    @rtype: string
    @return: hex encoded SHA-256 digest
    """

    members = frozenset(sg.layer_ids)
    if members in graph.digests:
        return graph.digests[members]

    induced = graph.digraph.subgraph(members)
    digests = {}

    for node in nx.topological_sort(induced):
        layer = graph.by_id[node]
        preds = sorted(digests[p] for p in induced.predecessors(node))
        inputs = [e.tensor_bytes for e in graph.inbound[node] if e.src not in members]
        if node in graph.sources:
            inputs.append(graph.input_bytes)
        digests[node] = _digest(layer.op_kind, layer.param_bytes, layer.mac_count, preds, sorted(inputs))

    sinks = sorted(digests[n] for n in induced if induced.out_degree(n) == 0)
    graph.digests[members] = _digest('subgraph', sinks)
    return graph.digests[members]
