"""Vertex connectivity, minimum vertex cuts, super- and hyper-connectivity of P_n."""
import logging
import math
import os
from collections import Counter
from itertools import combinations
from typing import List, Optional, Sequence

import networkx as nx
from networkx.algorithms.connectivity import build_auxiliary_node_connectivity, local_node_connectivity
from networkx.algorithms.flow import build_residual_network, shortest_augmenting_path

from .exceptions import DomainError, ScaleRefusal
from .graph_core import PancakeGraph, build_pancake, connected_components, edges, neighborhood
from .pool import map_ordered

MAX_FLOW_BOUND = 6
DEEP_MAX_FLOW_BOUND = 7
CUT_SUBSET_BOUND = 10 ** 7

EXHAUSTIVE = 'exhaustive'
STRUCTURAL = 'structural'


class VertexCut:
    def __init__(self, members: Sequence[int], component_profile: List[int], is_vertex_neighborhood: Optional[int]):
        self.members = tuple(sorted(members))
        self.component_profile = sorted(component_profile)
        self.is_vertex_neighborhood = is_vertex_neighborhood

    def to_dict(self, g: Optional[PancakeGraph] = None) -> dict:
        entry = {
            'members': list(self.members),
            'component_profile': self.component_profile,
            'is_vertex_neighborhood': self.is_vertex_neighborhood
        }
        if g is not None:
            entry['labels'] = [g.label(v).to_json() for v in self.members]
        return entry

    def __repr__(self):
        return f'VertexCut({list(self.members)}, profile={self.component_profile}, N(v)={self.is_vertex_neighborhood})'


class Certificate:
    """Outcome of a property check together with how it was established."""

    def __init__(self, prop: str, mode: str, result: bool, witnesses=None, evidence=None):
        self.property = prop
        self.mode = mode
        self.result = result
        self.witnesses = witnesses or []
        self.evidence = evidence or {}

    @property
    def exhaustive(self) -> bool:
        return self.mode == EXHAUSTIVE

    def to_dict(self) -> dict:
        return {
            'mode': self.mode,
            'result': self.result,
            'witnesses': self.witnesses,
            'evidence': self.evidence
        }

    def __bool__(self):
        return self.result


def to_networkx(g: PancakeGraph) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(range(g.vertex_count))
    graph.add_edges_from(edges(g))
    return graph


def vertex_connectivity(g: PancakeGraph, full_pair_cover: bool = False, bound: int = MAX_FLOW_BOUND,
                        logger=None) -> int:
    """Exact kappa by unit-capacity max-flow on the vertex-split digraph.

    Source-sink pairs: the identity against all its non-neighbours plus one neighbour of the
    identity against all of its non-neighbours; full_pair_cover widens the second part to every
    neighbour. A complete graph returns vertex_count - 1.
    """
    logger = logger if logger is not None else logging.getLogger()
    if g.vertex_count < 2:
        raise DomainError('vertex connectivity needs at least two vertices')
    if g.n > bound:
        raise ScaleRefusal('vertex_connectivity', f'n <= {bound}', f'n = {g.n}')

    graph = to_networkx(g)
    auxiliary = build_auxiliary_node_connectivity(graph)
    residual = build_residual_network(auxiliary, 'capacity')
    adjacency = g.neighbor_sets()

    root = g.identity_id
    neighbours = sorted(adjacency[root])
    sources = [root] + (neighbours if full_pair_cover else neighbours[:1])

    best = g.vertex_count - 1
    runs = 0
    for source in sources:
        for sink in range(g.vertex_count):
            if sink == source or sink in adjacency[source]:
                continue
            flow = local_node_connectivity(graph, source, sink, flow_func=shortest_augmenting_path,
                                           auxiliary=auxiliary, residual=residual, cutoff=best)
            runs += 1
            best = min(best, flow)
    logger.debug(f'kappa(P_{g.n}) = {best} after {runs} flow runs')
    return best


def _articulation_points(adjacency, removed, root, alive_count):
    """Iterative Tarjan on the graph minus removed, from root.

    Returns (articulation points, whether every alive vertex was reached).
    """
    disc = [-1] * len(adjacency)
    low = [0] * len(adjacency)
    disc[root] = 0
    clock = 1
    points = set()
    root_children = 0
    stack = [(root, -1, iter(adjacency[root]))]
    while stack:
        v, parent, neighbours = stack[-1]
        advanced = False
        for w in neighbours:
            if removed[w]:
                continue
            if disc[w] < 0:
                disc[w] = low[w] = clock
                clock += 1
                if v == root:
                    root_children += 1
                stack.append((w, v, iter(adjacency[w])))
                advanced = True
                break
            elif w != parent and disc[w] < low[v]:
                low[v] = disc[w]
        if not advanced:
            stack.pop()
            if stack:
                u = stack[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
                if u != root and low[v] >= disc[u]:
                    points.add(u)
    if root_children > 1:
        points.add(root)
    return points, clock == alive_count


def _component_sizes(adjacency, removed):
    alive = bytearray(1 - r for r in removed)
    sizes = []
    for root in range(len(adjacency)):
        if not alive[root]:
            continue
        alive[root] = 0
        size = 0
        queue = [root]
        while queue:
            v = queue.pop()
            size += 1
            for w in adjacency[v]:
                if alive[w]:
                    alive[w] = 0
                    queue.append(w)
        sizes.append(size)
    return sorted(sizes)


def _cuts_with_leading_index(adjacency, k, leading):
    """All k-cuts whose (k-1) smallest members start with leading; k-1 == 0 takes leading = -1."""
    vertex_count = len(adjacency)
    removed = bytearray(vertex_count)
    found = []
    if leading < 0:
        prefixes = [()]
    else:
        prefixes = ((leading,) + rest for rest in combinations(range(leading + 1, vertex_count), k - 2))
    for prefix in prefixes:
        for v in prefix:
            removed[v] = 1
        alive_count = vertex_count - len(prefix)
        root = next(v for v in range(vertex_count) if not removed[v])
        points, connected = _articulation_points(adjacency, removed, root, alive_count)
        floor = prefix[-1] if prefix else -1
        if connected:
            candidates = sorted(a for a in points if a > floor)
        else:
            candidates = [a for a in range(floor + 1, vertex_count) if not removed[a]]
        for a in candidates:
            removed[a] = 1
            sizes = _component_sizes(adjacency, removed)
            removed[a] = 0
            if len(sizes) >= 2:
                found.append((prefix + (a,), sizes))
        for v in prefix:
            removed[v] = 0
    return found


def enumerate_minimum_vertex_cuts(g: PancakeGraph, k: int, concurrency: Optional[int] = None,
                                  logger=None) -> List[VertexCut]:
    """Every k-subset whose removal disconnects g, exhaustively.

    A (k-1)-set T with g - T connected extends to a k-cut exactly by the articulation points of
    g - T; the largest member is taken as the added vertex so each cut is produced once. Work is
    partitioned by the smallest member and merged by sort.
    """
    logger = logger if logger is not None else logging.getLogger()
    if k < 1 or k >= g.vertex_count:
        raise DomainError(f'cut size {k} outside 1..{g.vertex_count - 1}')
    subsets = math.comb(g.vertex_count, k)
    if subsets > CUT_SUBSET_BOUND:
        raise ScaleRefusal('enumerate_minimum_vertex_cuts', f'C(n!, k) <= {CUT_SUBSET_BOUND}',
                           f'C({g.vertex_count}, {k}) = {subsets}')
    adjacency = g.adjacency_lists()
    if concurrency is None:
        concurrency = os.cpu_count() or 1

    if k == 1:
        work = [(adjacency, k, -1)]
    else:
        work = [(adjacency, k, leading) for leading in range(g.vertex_count - k + 1)]
    logger.debug(f'P_{g.n}: scanning {subsets} {k}-subsets in {len(work)} partitions, concurrency {concurrency}')

    found = [cut for part in map_ordered(_cuts_with_leading_index, work, concurrency) for cut in part]

    neighbourhood_owner = {frozenset(row): v for v, row in enumerate(adjacency)}
    cuts = [VertexCut(members, sizes, neighbourhood_owner.get(frozenset(members))) for members, sizes in found]
    cuts.sort(key=lambda cut: cut.members)
    logger.info(f'P_{g.n}: {len(cuts)} vertex cuts of size {k}')
    return cuts


def _cut_witnesses(g: PancakeGraph, cuts: List[VertexCut]) -> List[dict]:
    return [cut.to_dict(g) for cut in cuts]


def super_connectivity_evidence(g: PancakeGraph, kappa: Optional[int], bound: int = MAX_FLOW_BOUND) -> dict:
    """Non-exhaustive facts the proof of super-connectivity rests on."""
    root = g.identity_id
    around_root = neighborhood(g, {root})
    removal = connected_components(g, around_root)
    evidence = {
        'theorem_hypothesis_n_at_least_4': g.n >= 4,
        'kappa': kappa,
        'kappa_equals_degree': kappa == g.degree if kappa is not None else None,
        'identity_neighborhood_is_cut': sorted(len(c) for c in removal) == [1, g.vertex_count - g.n],
    }
    if 2 <= g.n - 1 <= bound:
        copy_kappa = vertex_connectivity(build_pancake(g.n - 1), bound=bound)
        evidence['copy_kappa'] = copy_kappa
        evidence['copy_kappa_equals_n_minus_2'] = copy_kappa == g.n - 2
    else:
        evidence['copy_kappa_equals_n_minus_2'] = None
    return evidence


def is_super_connected(g: PancakeGraph, cuts: Optional[List[VertexCut]] = None, kappa: Optional[int] = None,
                       exhaustive: Optional[bool] = None, concurrency: Optional[int] = None,
                       bound: int = MAX_FLOW_BOUND, logger=None) -> Certificate:
    """TRUE iff every minimum vertex cut is some N(v).

    Exhaustive when the cut scan fits its budget, otherwise a structural certificate labelled as such.
    """
    logger = logger if logger is not None else logging.getLogger()
    if kappa is None and g.n <= bound:
        kappa = vertex_connectivity(g, bound=bound, logger=logger)
    can_scan = kappa is not None and math.comb(g.vertex_count, kappa) <= CUT_SUBSET_BOUND
    if exhaustive is None:
        exhaustive = can_scan
    if exhaustive:
        if kappa is None:
            raise ScaleRefusal('exhaustive super-connectivity', f'n <= {bound} for kappa', f'n = {g.n}')
        if cuts is None:
            cuts = enumerate_minimum_vertex_cuts(g, kappa, concurrency=concurrency, logger=logger)
        offenders = [cut for cut in cuts if cut.is_vertex_neighborhood is None]
        return Certificate('super_connected', EXHAUSTIVE, not offenders, _cut_witnesses(g, offenders),
                           {'kappa': kappa, 'cut_count': len(cuts)})

    evidence = super_connectivity_evidence(g, kappa, bound=bound)
    # unknown (None) facts do not count against the certificate
    result = (evidence['theorem_hypothesis_n_at_least_4'] and evidence['identity_neighborhood_is_cut']
              and evidence['kappa_equals_degree'] is not False
              and evidence['copy_kappa_equals_n_minus_2'] is not False)
    logger.warning(f'P_{g.n}: super-connectivity reported from structural evidence only')
    return Certificate('super_connected', STRUCTURAL, result, [], evidence)


def closed_neighborhood_removal(g: PancakeGraph) -> dict:
    """P_n - N[I]: component count and sizes."""
    root = g.identity_id
    closed = neighborhood(g, {root}) | {root}
    components = connected_components(g, closed)
    return {
        'removed': len(closed),
        'component_sizes': sorted(len(c) for c in components),
        'connected': len(components) == 1
    }


def is_hyper_connected(g: PancakeGraph, cuts: Optional[List[VertexCut]] = None, kappa: Optional[int] = None,
                       super_certificate: Optional[Certificate] = None, exhaustive: Optional[bool] = None,
                       concurrency: Optional[int] = None, bound: int = MAX_FLOW_BOUND, logger=None) -> Certificate:
    """TRUE iff every minimum cut leaves exactly two components, one a single vertex.

    Structural route: super-connected + vertex-transitive + P_n - N[I] connected.
    """
    logger = logger if logger is not None else logging.getLogger()
    if kappa is None and g.n <= bound:
        kappa = vertex_connectivity(g, bound=bound, logger=logger)
    removal = closed_neighborhood_removal(g)
    if super_certificate is None:
        super_certificate = is_super_connected(g, cuts=cuts, kappa=kappa, exhaustive=exhaustive,
                                               concurrency=concurrency, bound=bound, logger=logger)
    structural_result = bool(super_certificate.result) and removal['connected']
    evidence = {
        'closed_neighborhood_removal': removal,
        'super_connected_mode': super_certificate.mode,
        'structural_result': structural_result
    }

    can_scan = kappa is not None and math.comb(g.vertex_count, kappa) <= CUT_SUBSET_BOUND
    if exhaustive is None:
        exhaustive = can_scan
    if not exhaustive:
        return Certificate('hyper_connected', STRUCTURAL, structural_result, [], evidence)

    if cuts is None:
        cuts = enumerate_minimum_vertex_cuts(g, kappa, concurrency=concurrency, logger=logger)
    expected_profile = [1, g.vertex_count - kappa - 1]
    offenders = [cut for cut in cuts if cut.component_profile != expected_profile]
    profiles = Counter(tuple(cut.component_profile) for cut in cuts)
    evidence['component_profiles'] = {' '.join(map(str, p)): count for p, count in sorted(profiles.items())}
    result = not offenders
    if super_certificate.exhaustive and g.n >= 4 and result != structural_result:
        logger.error(f'P_{g.n}: exhaustive and structural hyper-connectivity disagree')
    return Certificate('hyper_connected', EXHAUSTIVE, result, _cut_witnesses(g, offenders), evidence)
