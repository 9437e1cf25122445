"""Automorphism group of P_n, the GRR property, and the block structure around them.

The search is individualisation-refinement: partitions are colour arrays refined to the coarsest
equitable partition, individualising a vertex seeds the refinement with BFS distances from it,
and each level of the first path contributes the size of its base-point orbit to the group order.
"""
import logging
import math
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np
from sympy.combinatorics import Permutation as SymPermutation
from sympy.combinatorics import PermutationGroup

from .exceptions import DomainError, ScaleRefusal
from .graph_core import (BOTH, FIRST_SYMBOL, LAST_SYMBOL, PancakeGraph, block, build_pancake, connected_components,
                         distances_from, edges, induced_subgraph, lex_permutation_table, neighborhood,
                         rank_rows)
from .permutations import (GeneratorSet, Permutation, compose, embed, identity, inverse, perm_rank, perm_unrank,
                           transposition)

MAX_N = 7
STABILIZER_RANGE = (3, 6)


def left_translation(n: int, y: Permutation, g: Optional[PancakeGraph] = None) -> np.ndarray:
    """The vertex map v -> rank(y * unrank(v))."""
    if y.n != n:
        raise DomainError(f'{y} is not an element of S_{n}')
    labels = g.labels if g is not None else lex_permutation_table(n)
    images = np.asarray(y.entries, dtype=np.int8)[labels - 1]
    return rank_rows(images)


def conjugation_map(g: PancakeGraph, t: Permutation) -> np.ndarray:
    """The vertex map v -> t v t^-1 induced by the inner automorphism c(t)."""
    t_inverse = np.asarray(inverse(t).entries, dtype=np.int64) - 1
    images = np.asarray(t.entries, dtype=np.int8)[g.labels[:, t_inverse] - 1]
    return rank_rows(images)


def is_automorphism(g: PancakeGraph, mapping: np.ndarray) -> bool:
    """Bijective and edge preserving; for a bijection of a finite graph this also preserves non-edges."""
    mapping = np.asarray(mapping)
    if mapping.shape != (g.vertex_count,) or mapping.min() < 0 or mapping.max() >= g.vertex_count:
        return False
    if len(np.unique(mapping)) != g.vertex_count:
        return False
    adjacency = g.adjacency
    return np.array_equal(np.sort(mapping[adjacency], axis=1), np.sort(adjacency[mapping], axis=1))


def sample_non_edges(g: PancakeGraph, count: int, seed: int = 0) -> List[Tuple[int, int]]:
    """Exactly ``count`` ordered non-adjacent pairs of distinct vertices, drawn with replacement."""
    if g.edge_count == math.comb(g.vertex_count, 2):
        raise DomainError(f'P_{g.n} is complete and has no non-edges')
    rng = np.random.default_rng(seed)
    neighbours = g.neighbor_sets()
    pairs = []
    while len(pairs) < count:
        missing = count - len(pairs)
        u = rng.integers(0, g.vertex_count, size=2 * missing)
        v = rng.integers(0, g.vertex_count, size=2 * missing)
        pairs.extend((a, b) for a, b in zip(u.tolist(), v.tolist()) if a != b and b not in neighbours[a])
    return pairs[:count]


def preserves_sampled_non_edges(g: PancakeGraph, mapping: np.ndarray, samples: int, seed: int = 0) -> bool:
    neighbours = g.neighbor_sets()
    return all(int(mapping[b]) not in neighbours[int(mapping[a])] for a, b in sample_non_edges(g, samples, seed))


def _to_sympy(mapping) -> SymPermutation:
    return SymPermutation([int(x) for x in mapping])


def _orbit(point: int, generators: Sequence[np.ndarray]) -> Set[int]:
    orbit = {point}
    frontier = [point]
    while frontier:
        x = frontier.pop()
        for generator in generators:
            y = int(generator[x])
            if y not in orbit:
                orbit.add(y)
                frontier.append(y)
    return orbit


class _Level:
    def __init__(self, colors: np.ndarray, color: int, cell: np.ndarray, vertex: int):
        self.colors = colors
        self.color = color
        self.cell = cell
        self.vertex = vertex
        self.profile = np.bincount(colors)


class AutomorphismSearch:
    def __init__(self, g: PancakeGraph, logger=None):
        self.__g = g
        self.__adjacency = g.adjacency
        self.__logger = logger if logger is not None else logging.getLogger()
        self.__distances: Dict[int, np.ndarray] = {}
        self.refinements = 0
        self.leaves = 0

    def refine(self, colors: np.ndarray) -> np.ndarray:
        """Coarsest equitable partition finer than colors; colour ids stay canonical."""
        self.refinements += 1
        count = int(colors.max()) + 1
        while True:
            signature = np.column_stack((colors, np.sort(colors[self.__adjacency], axis=1)))
            _, refined = np.unique(signature, axis=0, return_inverse=True)
            refined = refined.reshape(-1)
            refined_count = int(refined.max()) + 1
            if refined_count == count:
                return refined
            colors, count = refined, refined_count

    def individualize(self, colors: np.ndarray, v: int) -> np.ndarray:
        if v not in self.__distances:
            self.__distances[v] = np.asarray(distances_from(self.__g, v), dtype=np.int64)
        _, seeded = np.unique(np.column_stack((colors, self.__distances[v])), axis=0, return_inverse=True)
        return self.refine(seeded.reshape(-1))

    @staticmethod
    def target_color(colors: np.ndarray) -> Optional[int]:
        """First smallest non-singleton cell."""
        sizes = np.bincount(colors)
        open_cells = np.flatnonzero(sizes > 1)
        if len(open_cells) == 0:
            return None
        return int(open_cells[np.argmin(sizes[open_cells])])

    def first_path(self) -> Tuple[List[_Level], np.ndarray]:
        colors = self.refine(np.zeros(self.__g.vertex_count, dtype=np.int64))
        path = []
        while True:
            color = self.target_color(colors)
            if color is None:
                return path, colors
            cell = np.flatnonzero(colors == color)
            vertex = int(cell[0])
            path.append(_Level(colors, color, cell, vertex))
            colors = self.individualize(colors, vertex)

    def __descend(self, path, leaf, depth, colors) -> Optional[np.ndarray]:
        if depth == len(path):
            if self.target_color(colors) is not None:
                return None
            self.leaves += 1
            positions = np.empty_like(colors)
            positions[colors] = np.arange(len(colors))
            mapping = positions[leaf]
            return mapping if is_automorphism(self.__g, mapping) else None
        reference = path[depth]
        profile = np.bincount(colors)
        if not np.array_equal(profile, reference.profile) or self.target_color(colors) != reference.color:
            return None
        for w in np.flatnonzero(colors == reference.color).tolist():
            found = self.__descend(path, leaf, depth + 1, self.individualize(colors, w))
            if found is not None:
                return found
        return None

    def run(self):
        """Generators plus the base and basic orbit sizes along the first path."""
        path, leaf = self.first_path()
        generators: List[np.ndarray] = []
        orbit_sizes = [1] * len(path)
        for depth in reversed(range(len(path))):
            level = path[depth]
            orbit = _orbit(level.vertex, generators)
            for w in level.cell.tolist():
                if w in orbit:
                    continue
                mapping = self.__descend(path, leaf, depth + 1, self.individualize(level.colors, w))
                if mapping is not None:
                    generators.append(mapping)
                    orbit = _orbit(level.vertex, generators)
            orbit_sizes[depth] = len(orbit)
        self.__logger.debug(f'P_{self.__g.n}: search depth {len(path)}, {self.refinements} refinements, '
                            f'{self.leaves} leaves, {len(generators)} generators')
        return generators, [level.vertex for level in path], orbit_sizes


class AutGroup:
    def __init__(self, g: PancakeGraph, generators: List[np.ndarray], base: List[int], basic_orbit_sizes: List[int]):
        self.n = g.n
        self.vertex_count = g.vertex_count
        self.generators = generators
        self.base = base
        self.basic_orbit_sizes = basic_orbit_sizes
        self.group = PermutationGroup([_to_sympy(m) for m in generators] or
                                      [SymPermutation(g.vertex_count - 1)])
        self.order = int(self.group.order())
        search_order = math.prod(basic_orbit_sizes)
        if search_order != self.order:
            raise RuntimeError(f'P_{g.n}: stabilizer chain order {self.order} != search orbit product {search_order}')
        self.vertex_orbit_count = len(self.group.orbits())
        self.stabilizer_order = int(self.group.stabilizer(0).order())
        self.regular = self.order == self.vertex_count and self.stabilizer_order == 1
        self.edge_orbit_count = len(edge_orbits(g, generators))

    def contains(self, mapping) -> bool:
        return bool(self.group.contains(_to_sympy(mapping)))

    def to_dict(self) -> dict:
        return {
            'n': self.n,
            'order': self.order,
            'regular': self.regular,
            'vertex_orbits': self.vertex_orbit_count,
            'edge_orbits': self.edge_orbit_count,
            'base': self.base,
            'basic_orbit_sizes': self.basic_orbit_sizes,
            'generators': [m.tolist() for m in self.generators]
        }


def edge_orbits(g: PancakeGraph, generators: Sequence[np.ndarray]) -> List[Set[int]]:
    edge_list = edges(g)
    if not generators:
        return [{index} for index in range(len(edge_list))]
    index = {edge: position for position, edge in enumerate(edge_list)}
    actions = []
    for mapping in generators:
        images = []
        for u, v in edge_list:
            a, b = int(mapping[u]), int(mapping[v])
            images.append(index[(a, b) if a < b else (b, a)])
        actions.append(SymPermutation(images))
    return [set(orbit) for orbit in PermutationGroup(actions).orbits()]


def is_edge_transitive(aut: AutGroup) -> bool:
    return aut.edge_orbit_count == 1


def compute_automorphism_group(g: PancakeGraph, logger=None) -> AutGroup:
    if g.n > MAX_N:
        raise ScaleRefusal('compute_automorphism_group', f'n <= {MAX_N}', f'n = {g.n}')
    if g.n < 3:
        raise DomainError('automorphism search is defined for n >= 3')
    search = AutomorphismSearch(g, logger)
    generators, base, orbit_sizes = search.run()
    return AutGroup(g, generators, base, orbit_sizes)


def verify_generators(g: PancakeGraph, aut: AutGroup, seed: int = 0) -> bool:
    """Exhaustive edge preservation and at least 10|E| sampled non-edges per generator."""
    samples = 10 * g.edge_count
    return all(is_automorphism(g, m) and preserves_sampled_non_edges(g, m, samples, seed) for m in aut.generators)


class GrrCertificate:
    def __init__(self, n, order, vertex_count, stabilizer_order, translations_ok):
        self.n = n
        self.order = order
        self.vertex_count = vertex_count
        self.stabilizer_order = stabilizer_order
        self.translations_ok = translations_ok
        self.result = order == vertex_count and stabilizer_order == 1 and translations_ok

    @property
    def ratio(self):
        return self.order // self.vertex_count if self.order % self.vertex_count == 0 else self.order / self.vertex_count

    def __bool__(self):
        return self.result

    def to_dict(self) -> dict:
        return {
            'result': self.result,
            'order': self.order,
            'ratio': self.ratio,
            'stabilizer_order': self.stabilizer_order,
            'left_translations_are_automorphisms': self.translations_ok
        }


def certify_grr(g: PancakeGraph, aut: Optional[AutGroup] = None, logger=None) -> GrrCertificate:
    """Aut = L(S_n) acting regularly, established by order counting."""
    if g.n < 3:
        raise DomainError('GRR certification is defined for n >= 3')
    aut = aut if aut is not None else compute_automorphism_group(g, logger)
    translations_ok = all(is_automorphism(g, left_translation(g.n, g.label(v), g)) for v in range(g.vertex_count))
    return GrrCertificate(g.n, aut.order, g.vertex_count, aut.stabilizer_order, translations_ok)


class GroupAutoStabilizer:
    """Inner automorphisms c(t) of S_n with t PR_n t^-1 = PR_n, each kept as its conjugating t."""

    def __init__(self, n: int, elements: List[Permutation]):
        self.n = n
        self.elements = elements
        self.outer_unsearched = n == 6

    def __len__(self):
        return len(self.elements)

    def to_dict(self) -> dict:
        return {
            'n': self.n,
            'elements': [t.to_json() for t in self.elements],
            'outer_automorphisms_unsearched': self.outer_unsearched
        }


def generating_set_stabilizer(n: int) -> GroupAutoStabilizer:
    low, high = STABILIZER_RANGE
    if not low <= n <= high:
        raise DomainError(f'generating_set_stabilizer needs {low} <= n <= {high}, got {n}')
    reversals = GeneratorSet(n).reversals
    reversal_set = set(reversals)
    seen = set()
    elements = []
    for rank in range(math.factorial(n)):
        t = perm_unrank(rank, n)
        t_inverse = inverse(t)
        images = tuple(compose(compose(t, r), t_inverse) for r in reversals)
        if set(images) != reversal_set or images in seen:
            continue
        seen.add(images)
        elements.append(t)
    return GroupAutoStabilizer(n, elements)


def semidirect_reconstruction(g: PancakeGraph, aut: AutGroup, stabilizer: GroupAutoStabilizer) -> dict:
    """Group generated by L(S_n) and the maps induced by Aut(S_n, PR_n), compared with Aut(P_n)."""
    maps = [left_translation(g.n, r, g) for r in GeneratorSet(g.n)]
    maps += [conjugation_map(g, t) for t in stabilizer.elements if t != identity(g.n)]
    group = PermutationGroup([_to_sympy(m) for m in maps])
    order = int(group.order())
    contains_aut = all(group.contains(_to_sympy(m)) for m in aut.generators)
    inside_aut = all(aut.contains(m) for m in maps)
    return {
        'order': order,
        'expected_order': math.factorial(g.n) * len(stabilizer),
        'equals_automorphism_group': order == aut.order and contains_aut and inside_aut
    }


def permutes_dominating_sets(g: PancakeGraph, aut: AutGroup, codes: Iterable[Iterable[int]]) -> dict:
    """Each generator maps the family of efficient dominating sets onto itself."""
    family = [frozenset(code) for code in codes]
    index = {code: position for position, code in enumerate(family)}
    actions = []
    for mapping in aut.generators:
        images = [index.get(frozenset(int(mapping[v]) for v in code)) for code in family]
        if any(image is None for image in images):
            return {'result': False, 'actions': actions}
        actions.append(images)
    return {'result': True, 'actions': actions}


class NeighborhoodDetermination:
    def __init__(self, g: PancakeGraph, i: int, solutions: List[Tuple[int, ...]], component_sizes: List[int]):
        self.n = g.n
        self.i = i
        self.solutions = solutions
        self.component_sizes = component_sizes
        self.expected = tuple(sorted(block(g, LAST_SYMBOL, j=i).members))

    @property
    def unique(self) -> bool:
        return self.solutions == [self.expected]

    @property
    def extras(self) -> List[Tuple[int, ...]]:
        return [s for s in self.solutions if s != self.expected]

    def to_dict(self, g: PancakeGraph) -> dict:
        return {
            'i': self.i,
            'solution_count': len(self.solutions),
            'unique': self.unique,
            'component_sizes': self.component_sizes,
            'extras': [[g.label(v).to_json() for v in s] for s in self.extras]
        }


def neighborhood_determination(g: PancakeGraph, i: int) -> NeighborhoodDetermination:
    """All X with N(X) = B^(i) and |X| = (n-1)!.

    Such an X avoids B^(i) and has no neighbour elsewhere, so it is a union of components of
    P_n - B^(i); subsets of components of the right total size are tested.
    """
    if not 1 <= i <= g.n:
        raise DomainError(f'i must lie in 1..{g.n}, got {i}')
    target_block = set(block(g, FIRST_SYMBOL, i=i).members)
    target_size = math.factorial(g.n - 1)
    all_components = connected_components(g, target_block)
    components = [c for c in all_components if len(c) <= target_size]
    components.sort(key=min)
    sizes = [len(c) for c in components]
    suffix_total = [0] * (len(sizes) + 1)
    for position in range(len(sizes) - 1, -1, -1):
        suffix_total[position] = suffix_total[position + 1] + sizes[position]

    solutions = []

    def extend(position, chosen, total):
        if total == target_size:
            members = set().union(*(components[c] for c in chosen))
            if neighborhood(g, members) == target_block:
                solutions.append(tuple(sorted(members)))
            return
        if position == len(components) or total + suffix_total[position] < target_size:
            return
        if total + sizes[position] <= target_size:
            extend(position + 1, chosen + [position], total + sizes[position])
        extend(position + 1, chosen, total)

    extend(0, [], 0)
    solutions.sort()
    return NeighborhoodDetermination(g, i, solutions, sorted(len(c) for c in all_components))


def brute_force_neighborhood_determination(g: PancakeGraph, i: int) -> List[Tuple[int, ...]]:
    """Direct scan over (n-1)!-subsets of V minus B^(i); n = 3 only in practice."""
    target_block = set(block(g, FIRST_SYMBOL, i=i).members)
    outside = [v for v in range(g.vertex_count) if v not in target_block]
    size = math.factorial(g.n - 1)
    return sorted(subset for subset in combinations(outside, size) if neighborhood(g, subset) == target_block)


def copy_embedding(n: int, j: int) -> List[int]:
    """phi(pi) = (j, n) pi for pi in S_(n-1), as vertex ids of P_n indexed by ids of P_(n-1)."""
    swap = transposition(n, j, n) if j != n else identity(n)
    return [perm_rank(compose(swap, embed(perm_unrank(r, n - 1), n))) for r in range(math.factorial(n - 1))]


def verify_copy_structure(n: int, g: Optional[PancakeGraph] = None) -> dict:
    """Exact-one-neighbour block counts, the copies B_(j) of P_(n-1), and N(B_(i)) = B^(i)."""
    if n < 3:
        raise DomainError('copy structure is defined for n >= 3')
    g = g if g is not None else build_pancake(n)
    small = build_pancake(n - 1)
    adjacency = g.adjacency
    first = g.labels[:, 0].astype(np.int64)
    last = g.labels[:, -1].astype(np.int64)
    first_of_neighbours = first[adjacency]
    last_of_neighbours = last[adjacency]

    first_block_counts = True
    for j in range(1, n + 1):
        counts = (first_of_neighbours == j).sum(axis=1)
        if not np.all(counts[first != j] == 1):
            first_block_counts = False

    mixed_block_counts = True
    outside = first != last
    opposite = ((first_of_neighbours == last[:, None]) & (last_of_neighbours == first[:, None])).sum(axis=1)
    if not np.all(opposite[outside] == 1):
        mixed_block_counts = False
    for k in range(1, n + 1):
        same_last = ((first_of_neighbours == k) & (last_of_neighbours == last[:, None])).sum(axis=1)
        eligible = outside & (first != k) & (last != k)
        if not np.all(same_last[eligible] == 1):
            mixed_block_counts = False

    copies = {}
    small_adjacency = small.adjacency_lists()
    for j in range(1, n + 1):
        embedding = copy_embedding(n, j)
        target = set(block(g, LAST_SYMBOL, j=j).members)
        bijective = len(set(embedding)) == len(embedding) and set(embedding) == target
        copy = induced_subgraph(g, target)
        preserved = bijective and all(
            {embedding[w] for w in small_adjacency[u]} ==
            {copy.global_ids[x] for x in copy.adjacency[copy.local_ids[embedding[u]]]}
            for u in range(small.vertex_count))
        copies[j] = preserved

    suffix_to_prefix = True
    for i in range(1, n + 1):
        tail = block(g, LAST_SYMBOL, j=i).members
        head = set(block(g, FIRST_SYMBOL, i=i).members)
        one_each = all(sum(1 for w in g.adjacency_lists()[v] if w in head) == 1 for v in tail)
        if neighborhood(g, tail) != head or not one_each:
            suffix_to_prefix = False

    root = g.identity_id
    closed = neighborhood(g, {root}) | {root}
    meets = [len(closed & block(g, LAST_SYMBOL, j=i).members) for i in range(1, n + 1)]
    identity_spread = meets[0] == 1 and all(m == 0 for m in meets[1:n - 1])

    result = {
        'n': n,
        'first_block_exactly_one_neighbor': first_block_counts,
        'mixed_block_exactly_one_neighbor': mixed_block_counts,
        'copy_isomorphisms': {str(j): ok for j, ok in copies.items()},
        'last_block_neighborhood_is_first_block': suffix_to_prefix,
        'closed_identity_neighborhood_meets_last_blocks': meets,
        'closed_identity_neighborhood_spread': identity_spread
    }
    result['result'] = (first_block_counts and mixed_block_counts and all(copies.values())
                        and suffix_to_prefix and identity_spread)
    return result


def block_sizes_consistent(g: PancakeGraph) -> bool:
    """|B^(i)| = |B_(j)| = (n-1)!, |B^(i)_(j)| = (n-2)! for i != j, and both families partition V."""
    full = math.factorial(g.n - 1)
    part = math.factorial(g.n - 2)
    firsts = [block(g, FIRST_SYMBOL, i=i).members for i in range(1, g.n + 1)]
    lasts = [block(g, LAST_SYMBOL, j=j).members for j in range(1, g.n + 1)]
    partitions = all(len(frozenset().union(*family)) == g.vertex_count for family in (firsts, lasts))
    sizes = all(len(b) == full for b in firsts + lasts)
    mixed = all(len(block(g, BOTH, i=i, j=j)) == (part if i != j else 0)
                for i in range(1, g.n + 1) for j in range(1, g.n + 1))
    return partitions and sizes and mixed
