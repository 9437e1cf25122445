"""Efficient dominating sets (perfect codes) of P_n."""
import logging
import sys
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Set, Tuple

from .exceptions import ScaleRefusal
from .graph_core import FIRST_SYMBOL, PancakeGraph, block, distances_from

MAX_N = 6
DEEP_MAX_N = 7


class EfficientDominatingSet:
    def __init__(self, members: Iterable[int], label: Optional[int] = None):
        self.members = tuple(sorted(members))
        self.label = label

    def __len__(self):
        return len(self.members)

    def to_dict(self, g: PancakeGraph) -> dict:
        return {
            'label': self.label,
            'size': len(self.members),
            'members': [g.label(v).to_json() for v in self.members]
        }

    def __repr__(self):
        return f'EfficientDominatingSet(label={self.label}, size={len(self.members)})'


class DominationCheck:
    """Verdict of is_efficient_dominating_set; violation names the first offending vertex."""

    def __init__(self, ok: bool, violation: Optional[int] = None, reason: Optional[str] = None):
        self.ok = ok
        self.violation = violation
        self.reason = reason

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return f'DominationCheck(ok={self.ok}, violation={self.violation}, reason={self.reason})'


def is_efficient_dominating_set(g: PancakeGraph, s: Iterable[int]) -> DominationCheck:
    """Independent, and every vertex outside has exactly one neighbour inside.

    Vertices are examined in ascending id; the first one breaking either rule is the witness.
    """
    members = set(s)
    adjacency = g.adjacency_lists()
    for v in range(g.vertex_count):
        inside = sum(1 for w in adjacency[v] if w in members)
        if v in members:
            if inside:
                return DominationCheck(False, v, 'adjacent members')
        elif inside == 0:
            return DominationCheck(False, v, 'undominated')
        elif inside > 1:
            return DominationCheck(False, v, 'dominated more than once')
    return DominationCheck(True)


class ExactCoverSearch:
    """Algorithm X over a universe of vertex ids with rows N[v].

    Column choice: fewest remaining rows, ties by lowest vertex id.
    """

    def __init__(self, rows: Dict[int, List[int]]):
        self.rows = rows
        self.columns: Dict[int, Set[int]] = {}
        for row, cells in rows.items():
            for cell in cells:
                self.columns.setdefault(cell, set()).add(row)
        self.nodes = 0

    def solve(self):
        limit = sys.getrecursionlimit()
        sys.setrecursionlimit(max(limit, 4 * len(self.columns) + 1000))
        try:
            yield from self.__search([])
        finally:
            sys.setrecursionlimit(limit)

    def __search(self, partial):
        self.nodes += 1
        if not self.columns:
            yield sorted(partial)
            return
        column = min(self.columns, key=lambda c: (len(self.columns[c]), c))
        for row in sorted(self.columns[column]):
            partial.append(row)
            removed = self.__select(row)
            yield from self.__search(partial)
            self.__deselect(row, removed)
            partial.pop()

    def __select(self, row):
        removed = []
        for cell in self.rows[row]:
            for other in self.columns[cell]:
                for other_cell in self.rows[other]:
                    if other_cell != cell:
                        self.columns[other_cell].remove(other)
            removed.append(self.columns.pop(cell))
        return removed

    def __deselect(self, row, removed):
        for cell in reversed(self.rows[row]):
            self.columns[cell] = removed.pop()
            for other in self.columns[cell]:
                for other_cell in self.rows[other]:
                    if other_cell != cell:
                        self.columns[other_cell].add(other)


def _first_symbol_labels(g: PancakeGraph) -> Dict[Tuple[int, ...], int]:
    return {tuple(sorted(block(g, FIRST_SYMBOL, i=i).members)): i for i in range(1, g.n + 1)}


def enumerate_efficient_dominating_sets(g: PancakeGraph, deep: bool = False,
                                        logger=None) -> List[EfficientDominatingSet]:
    """All perfect codes, as sets of centres whose closed neighbourhoods tile V."""
    logger = logger if logger is not None else logging.getLogger()
    bound = DEEP_MAX_N if deep else MAX_N
    if g.n > bound:
        raise ScaleRefusal('enumerate_efficient_dominating_sets', f'n <= {bound}', f'n = {g.n}')
    adjacency = g.adjacency_lists()
    rows = {v: [v] + adjacency[v] for v in range(g.vertex_count)}
    search = ExactCoverSearch(rows)
    labels = _first_symbol_labels(g)
    found = [EfficientDominatingSet(centres, labels.get(tuple(centres))) for centres in search.solve()]
    found.sort(key=lambda code: code.members[0])
    logger.debug(f'P_{g.n}: exact cover visited {search.nodes} nodes, {len(found)} solutions')
    return found


def brute_force_efficient_dominating_sets(g: PancakeGraph) -> List[Tuple[int, ...]]:
    """Scan every (n-1)!-subset. Only sensible for n = 3."""
    size = g.vertex_count // g.n
    return [subset for subset in combinations(range(g.vertex_count), size)
            if is_efficient_dominating_set(g, subset)]


def minimum_pairwise_distance(g: PancakeGraph, members: Iterable[int]) -> Optional[int]:
    members = sorted(members)
    if len(members) < 2:
        return None
    best = None
    for index, u in enumerate(members[:-1]):
        distance = distances_from(g, u)
        nearest = min(distance[v] for v in members[index + 1:])
        best = nearest if best is None else min(best, nearest)
    return best
