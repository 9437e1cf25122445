import json
import math

import numpy as np
import pytest

from pancake_lab.exceptions import DomainError, ScaleRefusal
from pancake_lab.graph_core import (BOTH, FIRST_SYMBOL, LAST_SYMBOL, SUFFIX_PATTERN, PancakeGraph, block,
                                    build_pancake, closed_neighborhood, connected_components, diameter,
                                    distances_from, edges, export_edgelist, export_json, girth, induced_subgraph,
                                    is_k4_free, lex_permutation_table, neighborhood, remainder,
                                    shortest_cycle_through)
from pancake_lab.permutations import Permutation, reverse_prefix


def test_p3_is_a_six_cycle(p3):
    # 0-2-4-1-3-5-0 in rank order
    order = [0, 2, 4, 1, 3, 5]
    for position, v in enumerate(order):
        assert set(p3.neighbors(v)) == {order[position - 1], order[(position + 1) % 6]}


@pytest.mark.parametrize('n, edge_count', [(3, 6), (4, 36), (5, 240)])
def test_edge_counts(n, edge_count):
    g = build_pancake(n)
    assert g.edge_count == edge_count
    assert len(edges(g)) == edge_count
    assert sum(len(set(row)) for row in g.adjacency_lists()) == 2 * edge_count


def test_adjacency_columns_are_prefix_reversals(p5):
    for v in range(0, p5.vertex_count, 7):
        entries = p5.label(v).entries
        for j in range(2, 6):
            assert p5.label(p5.neighbors(v)[j - 2]).entries == reverse_prefix(entries, j)


def test_no_loops_and_symmetric(p4):
    for u in range(p4.vertex_count):
        assert u not in p4.neighbors(u)
        for w in p4.neighbors(u):
            assert p4.has_edge(w, u)


@pytest.mark.parametrize('n', [3, 4, 5, 6])
def test_girth_is_six(n):
    assert girth(build_pancake(n)) == 6


@pytest.mark.slow
def test_girth_is_six_at_seven():
    assert girth(build_pancake(7)) == 6


@pytest.mark.parametrize('n', [3, 4, 5])
def test_girth_from_every_root_agrees(n):
    g = build_pancake(n)
    assert min(shortest_cycle_through(g, v) for v in range(g.vertex_count)) == girth(g)


def cubic_graph_on_24(rows):
    return PancakeGraph(4, np.array(rows, dtype=np.int32), lex_permutation_table(4))


def test_k4_free(p4):
    assert is_k4_free(p4)


def test_k4_search_sees_past_triangles():
    # six disjoint K4s, then four disjoint triangular prisms
    complete = [[b + w for w in range(4) if w != v] for b in range(0, 24, 4) for v in range(4)]
    assert not is_k4_free(cubic_graph_on_24(complete))
    prism = [[1, 2, 3], [0, 2, 4], [0, 1, 5], [4, 5, 0], [3, 5, 1], [3, 4, 2]]
    prisms = [[b + w for w in row] for b in range(0, 24, 6) for row in prism]
    assert is_k4_free(cubic_graph_on_24(prisms))


@pytest.mark.parametrize('n, expected', [(2, 1), (3, 3), (4, 4), (5, 5), (6, 7)])
def test_diameter(n, expected):
    assert diameter(build_pancake(n)) == expected


@pytest.mark.slow
def test_diameter_at_seven():
    assert diameter(build_pancake(7)) == 8


def test_diameter_by_depth_iteration(p4):
    frontier, seen, depth = {0}, {0}, 0
    while len(seen) < p4.vertex_count:
        frontier = {w for v in frontier for w in p4.neighbors(v)} - seen
        seen |= frontier
        depth += 1
    assert depth == diameter(p4)


@pytest.mark.parametrize('n', [3, 4, 5])
def test_block_sizes(n):
    g = build_pancake(n)
    for i in range(1, n + 1):
        assert len(block(g, FIRST_SYMBOL, i=i)) == math.factorial(n - 1)
        assert len(block(g, LAST_SYMBOL, j=i)) == math.factorial(n - 1)
        assert len(block(g, BOTH, i=i, j=i)) == 0
        for j in range(1, n + 1):
            if i != j:
                assert len(block(g, BOTH, i=i, j=j)) == math.factorial(n - 2)
                assert len(block(g, SUFFIX_PATTERN, i=i, k=j)) == math.factorial(n - 2)


def test_block_rejects_bad_symbols(p4):
    with pytest.raises(DomainError):
        block(p4, FIRST_SYMBOL, i=0)
    with pytest.raises(DomainError):
        block(p4, LAST_SYMBOL, j=5)
    with pytest.raises(DomainError):
        block(p4, 'middle', i=1)


def test_closed_neighborhood_and_remainder(p3):
    assert neighborhood(p3, {0}) == {2, 5}
    assert closed_neighborhood(p3, {0}) == {0, 2, 5}
    assert remainder(p3, {0}) == {1, 3, 4}


def test_components_after_removing_a_first_symbol_block(p3):
    removed = block(p3, FIRST_SYMBOL, i=1).members
    assert connected_components(p3, removed) == [{2, 4}, {3, 5}]


def test_distances(p3):
    distance = distances_from(p3, 0)
    assert distance == [0, 3, 1, 2, 2, 1]
    assert distances_from(p3, 0, removed={2, 5})[1] == -1


def test_last_symbol_block_of_p4_is_a_six_cycle(p4):
    copy = induced_subgraph(p4, block(p4, LAST_SYMBOL, j=4).members)
    assert copy.vertex_count == 6
    assert copy.edge_count == 6
    assert copy.degrees() == [2] * 6
    assert copy.is_connected()


def test_vertex_ids(p4):
    assert p4.vertex_id([1, 2, 3, 4]) == 0
    assert p4.vertex_id(Permutation((4, 3, 2, 1))) == 23
    assert p4.ids([[1, 2, 3, 4], [2, 1, 3, 4]]) == {0, 6}
    with pytest.raises(DomainError):
        p4.vertex_id([1, 2, 3])


def test_build_bounds():
    with pytest.raises(DomainError):
        build_pancake(1)
    with pytest.raises(ScaleRefusal):
        build_pancake(11)


def test_neighbours_on_demand_above_the_precomputed_bound():
    g = build_pancake(9)
    assert len(g.neighbors(0)) == 8
    assert g.label(g.neighbors(0)[0]).entries[:3] == (2, 1, 3)
    with pytest.raises(ScaleRefusal):
        g.adjacency


def test_export_edgelist(tmp_path, p3):
    path = tmp_path / 'p3.txt'
    export_edgelist(p3, str(path))
    lines = path.read_text().splitlines()
    assert len(lines) == 6
    assert lines[0] == '0 2'


def test_export_json(tmp_path, p4):
    path = tmp_path / 'p4.json'
    export_json(p4, str(path))
    document = json.loads(path.read_text())
    assert document['n'] == 4
    assert len(document['vertices']) == 24
    assert len(document['edges']) == 36
    assert document['vertices'][0] == [1, 2, 3, 4]
