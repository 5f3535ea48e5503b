import io
import logging
import random
from functools import lru_cache
from typing import (
    Dict, FrozenSet, Iterable, List, Optional, Sequence, TextIO, Union,
)

import networkx as nx

from . import constants
from .errors import EdgeListParseError, MalformedPairError, ParameterError
from .instance import Instance, PairSet, ResponseTable
from .objectives import Objective
from .utils import derive_seed, popcount


default_logger = logging.getLogger(__name__)

HypothesisClass = List[FrozenSet[int]]

# Closed-neighbourhood unions kept per DominationIndex
COVERED_CACHE_SIZE = 1 << 16


def parse_edge_list(source: Union[str, TextIO]) -> nx.Graph:
    """
    Read a SNAP-style edge list: one ``u v`` pair per line, ``#`` comments.
    Node ids are compacted to 0..n-1 in order of first appearance, the
    graph is undirected and self edges are dropped. Extra columns after
    the first two are ignored.
    """
    stream = io.StringIO(source) if isinstance(source, str) else source
    graph = nx.Graph()
    ids: Dict[int, int] = {}

    def compact(original: int) -> int:
        node = ids.get(original)
        if node is None:
            node = ids[original] = len(ids)
            graph.add_node(node, label=str(original))
        return node

    self_edges = 0
    for line_number, line in enumerate(stream, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith('#'):
            continue
        tokens = stripped.split()
        if len(tokens) < 2:
            raise EdgeListParseError(line_number, line.rstrip('\n'))
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise EdgeListParseError(line_number, line.rstrip('\n'))
        u, v = compact(u), compact(v)
        if u == v:
            self_edges += 1
            continue
        graph.add_edge(u, v)

    default_logger.info(
        'Parsed graph with %d nodes and %d edges (%d self edges dropped)',
        graph.number_of_nodes(), graph.number_of_edges(), self_edges,
    )
    return graph


def read_edge_list(path: str) -> nx.Graph:
    with open(path) as fp:
        return parse_edge_list(fp)


class DominationIndex(object):
    """
    Closed neighbourhoods of a graph as int bitmasks, with the nodes each
    query sends an ad to. ``covered(s)`` is shared by every dominating
    objective built on the index and memoized per PairSet.
    """

    def __init__(
        self,
        graph: nx.Graph,
        query_nodes: Optional[Sequence[int]] = None,
    ) -> None:
        self.graph = graph
        self.node_count = graph.number_of_nodes()
        self.neighbourhoods = {
            node: (1 << node) | sum(1 << other for other in graph.neighbors(node))
            for node in graph.nodes
        }
        if query_nodes is None:
            query_nodes = range(self.node_count)
        self.query_nodes = tuple(query_nodes)
        for node in self.query_nodes:
            if node not in self.neighbourhoods:
                raise ParameterError('unknown query node %r' % (node,))
        self.covered = lru_cache(maxsize=COVERED_CACHE_SIZE)(self._covered)

    def _covered(self, s: PairSet) -> int:
        query_nodes = self.query_nodes
        neighbourhoods = self.neighbourhoods
        mask = 0
        for q, _ in s:
            if not 0 <= q < len(query_nodes):
                raise MalformedPairError('query q%d is not mapped to a node' % q)
            mask |= neighbourhoods[query_nodes[q]]
        return mask

    def group_mask(self, group: Iterable[int]) -> int:
        mask = 0
        for node in group:
            if node not in self.neighbourhoods:
                raise ParameterError('unknown node %r' % (node,))
            mask |= 1 << node
        return mask


class DominatingSetObjective(Objective):
    """
    Group members that received an ad or have a neighbour who did, plus the
    constant number of nodes outside the group. Reaches the node count iff
    the asked nodes dominate the group. Responses are ignored.
    """

    response_independent = True

    def __init__(self, index: DominationIndex, group: Iterable[int]) -> None:
        self.group = frozenset(group)
        if not self.group:
            raise ParameterError('dominating-set group must not be empty')
        self.index = index
        self.mask = index.group_mask(self.group)
        self.offset = index.node_count - len(self.group)

    def __call__(self, s: PairSet) -> int:
        return popcount(self.mask & self.index.covered(s)) + self.offset

    def __str__(self) -> str:
        return 'DominatingSetObjective(|group|=%d, |V|=%d)' % (
            len(self.group), self.index.node_count
        )


def dominating_set_objective(
    graph: nx.Graph,
    group: Iterable[int],
    query_nodes: Optional[Sequence[int]] = None,
    index: Optional[DominationIndex] = None,
) -> DominatingSetObjective:
    if index is None:
        index = DominationIndex(graph, query_nodes)
    return DominatingSetObjective(index, group)


def _components(graph: nx.Graph) -> List[List[int]]:
    components = [sorted(c) for c in nx.connected_components(graph)]
    components.sort(key=lambda c: (-len(c), c[0]))
    return components


def partition_clusters(graph: nx.Graph, k: int, seed: int) -> HypothesisClass:
    """
    Split the graph into k disjoint clusters by multi-source BFS region
    growing. Seeds are drawn per connected component so regions never need
    to cross components; with fewer seeds than components the leftover
    components join the smallest region.
    """
    n = graph.number_of_nodes()
    if not 1 <= k <= n:
        raise ParameterError('k must be between 1 and %d, got %r' % (n, k))

    rng = random.Random(seed)
    components = _components(graph)
    seeds = [rng.choice(component) for component in components[:k]]
    leftovers = components[k:]
    if k > len(components):
        chosen = set(seeds)
        remaining = [node for node in sorted(graph.nodes) if node not in chosen]
        seeds.extend(rng.sample(remaining, k - len(seeds)))

    assignment: Dict[int, int] = {}
    frontiers: List[List[int]] = []
    for region, node in enumerate(seeds):
        assignment[node] = region
        frontiers.append([node])

    while any(frontiers):
        for region in range(k):
            grown = []
            for node in frontiers[region]:
                for neighbour in sorted(graph.neighbors(node)):
                    if neighbour not in assignment:
                        assignment[neighbour] = region
                        grown.append(neighbour)
            frontiers[region] = grown

    regions: List[set] = [set() for _ in range(k)]
    for node, region in assignment.items():
        regions[region].add(node)
    for component in leftovers:
        smallest = min(range(k), key=lambda i: (len(regions[i]), i))
        regions[smallest].update(component)

    return [frozenset(region) for region in regions]


def gen_clusters_class(
    graph: nx.Graph,
    sizes: Sequence[int] = constants.DEFAULT_CLUSTER_SIZES,
    seed: int = 0,
) -> HypothesisClass:
    """Union of one partition per size; every node lies in len(sizes) groups"""
    groups: HypothesisClass = []
    for index, k in enumerate(sizes):
        groups.extend(
            partition_clusters(graph, k, derive_seed(seed, 'clusters', index, k))
        )
    return groups


def gen_noisy_variants(
    base: Sequence[FrozenSet[int]],
    target: int,
    m: int,
    seed: int,
) -> HypothesisClass:
    """base followed by m copies of the target group, each missing one member"""
    if not 0 <= target < len(base):
        raise ParameterError('unknown target group %r' % (target,))
    group = base[target]
    if len(group) < 2:
        raise ParameterError(
            'target group h%d has %d member(s), need at least 2'
            % (target, len(group))
        )
    rng = random.Random(seed)
    members = sorted(group)
    variants = [group - {rng.choice(members)} for _ in range(m)]
    return list(base) + variants


def _ball(graph: nx.Graph, center: int, radius: int) -> FrozenSet[int]:
    return frozenset(
        nx.single_source_shortest_path_length(graph, center, cutoff=radius)
    )


def gen_balls(
    graph: nx.Graph,
    count: int = constants.DEFAULT_BALL_COUNT,
    radius: int = constants.DEFAULT_BALL_RADIUS,
    seed: int = 0,
) -> HypothesisClass:
    """Geodesic balls around seeded uniform random centers"""
    if radius < 0:
        raise ParameterError('radius must be non-negative, got %r' % (radius,))
    rng = random.Random(seed)
    nodes = sorted(graph.nodes)
    return [_ball(graph, rng.choice(nodes), radius) for _ in range(count)]


def gen_noisy_balls(
    graph: nx.Graph,
    cores: int = constants.DEFAULT_NOISY_BALL_CORES,
    variants: int = constants.DEFAULT_NOISY_BALL_VARIANTS,
    radius: int = constants.DEFAULT_BALL_RADIUS,
    seed: int = 0,
) -> HypothesisClass:
    """
    ``variants`` single-member removals of each of ``cores`` geodesic balls.
    Only the variants form the class. Centers are drawn among nodes whose
    ball has at least two members.
    """
    if radius < 1:
        raise ParameterError('noisy balls need radius >= 1, got %r' % (radius,))
    candidates = sorted(node for node in graph.nodes if graph.degree(node) > 0)
    if not candidates:
        raise ParameterError('graph has no edges')
    rng = random.Random(seed)
    groups: HypothesisClass = []
    for core_index in range(cores):
        core = _ball(graph, rng.choice(candidates), radius)
        noisy = gen_noisy_variants(
            [core], 0, variants, derive_seed(seed, 'noisy-balls', core_index)
        )
        groups.extend(noisy[1:])
    return groups


def gen_expanded_clusters(
    graph: nx.Graph,
    k: int = constants.DEFAULT_EXPANDED_CLUSTERS,
    seed: int = 0,
) -> HypothesisClass:
    """Partition into k clusters and grow each by its immediate neighbours"""
    groups = []
    for cluster in partition_clusters(graph, k, seed):
        expanded = set(cluster)
        for node in cluster:
            expanded.update(graph.neighbors(node))
        groups.append(frozenset(expanded))
    return groups


def gen_community_graph(
    sizes: Sequence[int] = (100, 100),
    p_in: float = 0.1,
    p_out: float = 0.01,
    seed: int = 0,
) -> nx.Graph:
    """Seeded stochastic block model with uniform in/out edge probabilities"""
    probabilities = [
        [p_in if i == j else p_out for j in range(len(sizes))]
        for i in range(len(sizes))
    ]
    sbm = nx.stochastic_block_model(list(sizes), probabilities, seed=seed)
    graph = nx.Graph()
    for node, data in sorted(sbm.nodes(data=True)):
        graph.add_node(node, label=str(node), block=data.get('block'))
    graph.add_edges_from(sbm.edges())
    return graph


def build_dominating_instance(
    graph: nx.Graph,
    hc: Sequence[Iterable[int]],
    costs: Optional[Sequence[object]] = None,
    index: Optional[DominationIndex] = None,
) -> Instance:
    """
    One question per node, answered 1 iff the node belongs to the target
    group. F_h is the dominating-set objective of group h and alpha = |V|.
    """
    groups = [frozenset(group) for group in hc]
    if not groups:
        raise ParameterError('hypothesis class is empty')
    n = graph.number_of_nodes()
    index = index or DominationIndex(graph)

    valid = {}
    for h, group in enumerate(groups):
        for node in range(n):
            valid[(node, h)] = (1,) if node in group else (0,)
    table = ResponseTable(len(groups), n, 2, valid)

    labels = [graph.nodes[node].get('label') for node in range(n)]
    return Instance(
        table=table,
        costs=costs if costs is not None else [1] * n,
        objectives=[DominatingSetObjective(index, group) for group in groups],
        alpha=n,
        labels=labels if all(labels) else None,
    )
