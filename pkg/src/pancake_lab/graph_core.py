"""The pancake graph P_n = Cay(S_n, PR_n) on rank-indexed vertices, plus its block structure."""
import json
import logging
import math
from collections import deque
from itertools import combinations, permutations as _lex_permutations
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np

from .exceptions import DomainError, ScaleRefusal
from .permutations import Permutation, perm_rank, perm_unrank, reverse_prefix

PRECOMPUTED_BOUND = 8
MAX_N = 10

FIRST_SYMBOL = 'first_symbol'
LAST_SYMBOL = 'last_symbol'
BOTH = 'both'
SUFFIX_PATTERN = 'suffix_pattern'

NO_CYCLE = -1


def lex_permutation_table(n: int) -> np.ndarray:
    """All of S_n as an (n!, n) int8 array, row r holding the one-line form of rank r."""
    return np.array(list(_lex_permutations(range(1, n + 1))), dtype=np.int8).reshape(-1, n)


def rank_rows(table: np.ndarray) -> np.ndarray:
    """Vectorised lexicographic rank of each row of a permutation table."""
    count, n = table.shape
    ranks = np.zeros(count, dtype=np.int64)
    for position in range(n - 1):
        smaller_later = (table[:, position + 1:] < table[:, position:position + 1]).sum(axis=1)
        ranks += smaller_later * math.factorial(n - 1 - position)
    return ranks


class PancakeGraph:
    """Immutable (n-1)-regular graph on n! vertices.

    adjacency[v, j - 2] is the neighbour of v through r_{1j}. The table exists up to
    PRECOMPUTED_BOUND; above it neighbours are derived from rank/unrank on demand.
    """

    def __init__(self, n: int, adjacency: Optional[np.ndarray], labels: Optional[np.ndarray]):
        self.n = n
        self.vertex_count = math.factorial(n)
        self.degree = n - 1
        self.__adjacency = adjacency
        self.__labels = labels
        if adjacency is not None:
            adjacency.setflags(write=False)
            labels.setflags(write=False)
        self.__neighbour_sets = None
        self.__adjacency_lists = None

    @property
    def adjacency(self) -> np.ndarray:
        if self.__adjacency is None:
            raise ScaleRefusal('precomputed adjacency', f'n <= {PRECOMPUTED_BOUND}', f'n = {self.n}')
        return self.__adjacency

    @property
    def labels(self) -> np.ndarray:
        if self.__labels is None:
            raise ScaleRefusal('label table', f'n <= {PRECOMPUTED_BOUND}', f'n = {self.n}')
        return self.__labels

    @property
    def edge_count(self) -> int:
        return self.vertex_count * self.degree // 2

    @property
    def identity_id(self) -> int:
        return 0

    def neighbors(self, v: int) -> List[int]:
        if self.__adjacency is not None:
            return [int(w) for w in self.__adjacency[v]]
        entries = perm_unrank(v, self.n).entries
        return [perm_rank(Permutation(reverse_prefix(entries, j))) for j in range(2, self.n + 1)]

    def neighbor_sets(self) -> List[Set[int]]:
        if self.__neighbour_sets is None:
            self.__neighbour_sets = [set(row) for row in self.adjacency.tolist()]
        return self.__neighbour_sets

    def adjacency_lists(self) -> List[List[int]]:
        if self.__adjacency_lists is None:
            self.__adjacency_lists = self.adjacency.tolist()
        return self.__adjacency_lists

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.neighbor_sets()[u]

    def label(self, v: int) -> Permutation:
        if self.__labels is not None:
            return Permutation(tuple(int(x) for x in self.__labels[v]))
        return perm_unrank(v, self.n)

    def vertex_id(self, p) -> int:
        if not isinstance(p, Permutation):
            p = Permutation(tuple(p))
        if p.n != self.n:
            raise DomainError(f'{p} is not a vertex of P_{self.n}')
        return perm_rank(p)

    def ids(self, perms: Iterable) -> Set[int]:
        return {self.vertex_id(p) for p in perms}

    def __repr__(self):
        return f'PancakeGraph(n={self.n}, vertices={self.vertex_count}, edges={self.edge_count})'


def build_pancake(n: int) -> PancakeGraph:
    if n < 2:
        raise DomainError(f'P_n needs n >= 2, got {n}')
    if n > MAX_N:
        raise ScaleRefusal('build_pancake', f'n <= {MAX_N}', f'n = {n}')
    if n > PRECOMPUTED_BOUND:
        logging.getLogger(__name__).warning(f'P_{n}: adjacency computed on demand above n = {PRECOMPUTED_BOUND}')
        return PancakeGraph(n, None, None)

    labels = lex_permutation_table(n)
    adjacency = np.empty((labels.shape[0], n - 1), dtype=np.int32)
    for j in range(2, n + 1):
        flipped = labels.copy()
        flipped[:, :j] = labels[:, j - 1::-1]
        adjacency[:, j - 2] = rank_rows(flipped)
    return PancakeGraph(n, adjacency, labels)


def edges(g: PancakeGraph) -> List[Tuple[int, int]]:
    """Ascending (u, v) pairs with u < v."""
    return [(u, v) for u, row in enumerate(g.adjacency_lists()) for v in sorted(row) if u < v]


def neighborhood(g: PancakeGraph, f: Iterable[int]) -> Set[int]:
    """N(F): vertices outside F with a neighbour in F."""
    members = set(f)
    adjacency = g.adjacency_lists()
    result = set()
    for v in members:
        result.update(adjacency[v])
    return result - members


def closed_neighborhood(g: PancakeGraph, f: Iterable[int]) -> Set[int]:
    """C(F) = F | N(F)."""
    members = set(f)
    return members | neighborhood(g, members)


def remainder(g: PancakeGraph, f: Iterable[int]) -> Set[int]:
    """R(F) = V minus C(F)."""
    return set(range(g.vertex_count)) - closed_neighborhood(g, f)


def connected_components(g: PancakeGraph, removed: Iterable[int] = ()) -> List[Set[int]]:
    adjacency = g.adjacency_lists()
    alive = bytearray([1]) * g.vertex_count
    for v in removed:
        alive[v] = 0
    components = []
    for root in range(g.vertex_count):
        if not alive[root]:
            continue
        alive[root] = 0
        component = {root}
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in adjacency[v]:
                if alive[w]:
                    alive[w] = 0
                    component.add(w)
                    queue.append(w)
        components.append(component)
    return components


def distances_from(g: PancakeGraph, source: int, removed: Iterable[int] = ()) -> List[int]:
    """BFS distances; -1 for unreachable or removed vertices."""
    adjacency = g.adjacency_lists()
    distance = [-1] * g.vertex_count
    blocked = set(removed)
    distance[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in adjacency[v]:
            if distance[w] < 0 and w not in blocked:
                distance[w] = distance[v] + 1
                queue.append(w)
    return distance


def shortest_cycle_through(g: PancakeGraph, root: int) -> int:
    """Shortest cycle seen by a BFS from root with parent exclusion, NO_CYCLE if none.

    Exact whenever root lies on a shortest cycle of the graph.
    """
    adjacency = g.adjacency_lists()
    distance = {root: 0}
    parent = {root: -1}
    queue = deque([root])
    best = math.inf
    while queue:
        v = queue.popleft()
        if 2 * distance[v] >= best:
            break
        for w in adjacency[v]:
            if w not in distance:
                distance[w] = distance[v] + 1
                parent[w] = v
                queue.append(w)
            elif parent[v] != w:
                best = min(best, distance[v] + distance[w] + 1)
    return NO_CYCLE if best == math.inf else int(best)


def girth(g: PancakeGraph, roots: Optional[Sequence[int]] = None) -> int:
    """Shortest cycle length. Cayley graphs are vertex-transitive, so the identity alone is the default root."""
    if g.n < 3:
        return NO_CYCLE
    lengths = [shortest_cycle_through(g, r) for r in (roots if roots is not None else [g.identity_id])]
    lengths = [length for length in lengths if length != NO_CYCLE]
    return min(lengths) if lengths else NO_CYCLE


def is_k4_free(g: PancakeGraph) -> bool:
    """No four mutually adjacent vertices, searched over every triple of higher-numbered neighbours."""
    neighbours = g.neighbor_sets()
    for v, around in enumerate(neighbours):
        for a, b, c in combinations(sorted(w for w in around if w > v), 3):
            if b in neighbours[a] and c in neighbours[a] and c in neighbours[b]:
                return False
    return True


def diameter(g: PancakeGraph) -> int:
    """Eccentricity of the identity, equal to the diameter by vertex-transitivity."""
    distance = distances_from(g, g.identity_id)
    if min(distance) < 0:
        raise DomainError(f'P_{g.n} is not connected')
    return max(distance)


class Block:
    def __init__(self, kind: str, members: Set[int], i: Optional[int] = None, j: Optional[int] = None,
                 k: Optional[int] = None):
        self.kind = kind
        self.members = frozenset(members)
        self.i = i
        self.j = j
        self.k = k

    def __len__(self):
        return len(self.members)

    def __contains__(self, v):
        return v in self.members

    def __repr__(self):
        return f'Block({self.kind}, i={self.i}, j={self.j}, k={self.k}, size={len(self.members)})'


def _check_symbol(g: PancakeGraph, symbol: Optional[int], name: str):
    if symbol is None or not 1 <= symbol <= g.n:
        raise DomainError(f'{name} must lie in 1..{g.n}, got {symbol}')


def block(g: PancakeGraph, kind: str, i: Optional[int] = None, j: Optional[int] = None,
          k: Optional[int] = None) -> Block:
    """B^(i) (first_symbol), B_(j) (last_symbol), B^(i)_(j) (both), B_{(n-1)->i, n->k} (suffix_pattern).

    B^(i)_(i) is empty for n >= 2.
    """
    labels = g.labels
    if kind == FIRST_SYMBOL:
        _check_symbol(g, i, 'i')
        mask = labels[:, 0] == i
    elif kind == LAST_SYMBOL:
        _check_symbol(g, j, 'j')
        mask = labels[:, -1] == j
    elif kind == BOTH:
        _check_symbol(g, i, 'i')
        _check_symbol(g, j, 'j')
        mask = (labels[:, 0] == i) & (labels[:, -1] == j)
    elif kind == SUFFIX_PATTERN:
        _check_symbol(g, i, 'i')
        _check_symbol(g, k, 'k')
        if g.n < 2:
            raise DomainError('suffix pattern needs n >= 2')
        mask = (labels[:, -2] == i) & (labels[:, -1] == k)
    else:
        raise DomainError(f'unknown block kind {kind}')
    return Block(kind, {int(v) for v in np.flatnonzero(mask)}, i=i, j=j, k=k)


class InducedSubgraph:
    """Induced subgraph keeping a local <-> global id map."""

    def __init__(self, g: PancakeGraph, members: Iterable[int]):
        self.parent = g
        self.global_ids = sorted(set(members))
        self.local_ids: Dict[int, int] = {v: index for index, v in enumerate(self.global_ids)}
        adjacency = g.adjacency_lists()
        self.adjacency = [sorted(self.local_ids[w] for w in adjacency[v] if w in self.local_ids)
                          for v in self.global_ids]

    @property
    def vertex_count(self) -> int:
        return len(self.global_ids)

    @property
    def edge_count(self) -> int:
        return sum(len(row) for row in self.adjacency) // 2

    def degrees(self) -> List[int]:
        return [len(row) for row in self.adjacency]

    def is_connected(self) -> bool:
        if not self.global_ids:
            return True
        seen = {0}
        queue = deque([0])
        while queue:
            v = queue.popleft()
            for w in self.adjacency[v]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return len(seen) == self.vertex_count


def induced_subgraph(g: PancakeGraph, members: Iterable[int]) -> InducedSubgraph:
    return InducedSubgraph(g, members)


def to_json(g: PancakeGraph) -> dict:
    return {
        'n': g.n,
        'vertices': g.labels.tolist(),
        'edges': [list(edge) for edge in edges(g)]
    }


def export_json(g: PancakeGraph, path: str):
    with open(path, 'w') as handle:
        json.dump(to_json(g), handle, separators=(',', ':'))


def export_edgelist(g: PancakeGraph, path: str):
    with open(path, 'w') as handle:
        handle.writelines(f'{u} {v}\n' for u, v in edges(g))