from collections import Counter
from itertools import combinations

import networkx as nx
import pytest

from pancake_lab.connectivity import (EXHAUSTIVE, STRUCTURAL, _articulation_points, closed_neighborhood_removal,
                                      enumerate_minimum_vertex_cuts, is_hyper_connected, is_super_connected,
                                      to_networkx, vertex_connectivity)
from pancake_lab.exceptions import DomainError, ScaleRefusal
from pancake_lab.graph_core import build_pancake, connected_components


def brute_force_kappa(g):
    for k in range(1, g.vertex_count - 1):
        for subset in combinations(range(g.vertex_count), k):
            if len(connected_components(g, subset)) > 1:
                return k
    return g.vertex_count - 1


def brute_force_cuts(g, k):
    return [subset for subset in combinations(range(g.vertex_count), k) if len(connected_components(g, subset)) > 1]


@pytest.mark.parametrize('n', [3, 4, 5])
def test_kappa(n):
    assert vertex_connectivity(build_pancake(n)) == n - 1


@pytest.mark.slow
def test_kappa_at_six(p6):
    assert vertex_connectivity(p6) == 5


def test_kappa_matches_brute_force(p3, p4):
    assert vertex_connectivity(p3) == brute_force_kappa(p3)
    assert vertex_connectivity(p4, full_pair_cover=True) == brute_force_kappa(p4)


def test_kappa_refuses_above_bound():
    with pytest.raises(ScaleRefusal):
        vertex_connectivity(build_pancake(7))


def test_p3_minimum_cuts(p3):
    cuts = enumerate_minimum_vertex_cuts(p3, 2, concurrency=1)
    assert [cut.members for cut in cuts] == brute_force_cuts(p3, 2)
    assert Counter(tuple(cut.component_profile) for cut in cuts) == {(1, 3): 6, (2, 2): 3}
    antipodal = [cut.members for cut in cuts if cut.is_vertex_neighborhood is None]
    assert antipodal == [(0, 1), (2, 3), (4, 5)]


def test_p4_minimum_cuts(p4):
    cuts = enumerate_minimum_vertex_cuts(p4, 3, concurrency=1)
    assert [cut.members for cut in cuts] == brute_force_cuts(p4, 3)
    assert len(cuts) == 24
    assert all(cut.component_profile == [1, 20] for cut in cuts)
    assert sorted(cut.is_vertex_neighborhood for cut in cuts) == list(range(24))


def test_parallel_cut_enumeration_matches(p4):
    sequential = enumerate_minimum_vertex_cuts(p4, 3, concurrency=1)
    parallel = enumerate_minimum_vertex_cuts(p4, 3, concurrency=2)
    assert [cut.members for cut in parallel] == [cut.members for cut in sequential]


@pytest.mark.slow
def test_p5_minimum_cuts(p5):
    cuts = enumerate_minimum_vertex_cuts(p5, 4)
    assert len(cuts) == 120
    assert all(cut.component_profile == [1, 115] for cut in cuts)
    assert all(cut.is_vertex_neighborhood is not None for cut in cuts)


def test_cut_enumeration_bounds(p3, p6):
    with pytest.raises(DomainError):
        enumerate_minimum_vertex_cuts(p3, 0)
    with pytest.raises(ScaleRefusal):
        enumerate_minimum_vertex_cuts(p6, 5)


def test_p3_is_not_super_connected(p3):
    certificate = is_super_connected(p3, concurrency=1)
    assert certificate.mode == EXHAUSTIVE
    assert not certificate
    assert [w['members'] for w in certificate.witnesses] == [[0, 1], [2, 3], [4, 5]]


def test_p4_is_super_and_hyper_connected(p4):
    cuts = enumerate_minimum_vertex_cuts(p4, 3, concurrency=1)
    super_certificate = is_super_connected(p4, cuts=cuts, kappa=3)
    assert super_certificate.exhaustive and super_certificate.result
    hyper_certificate = is_hyper_connected(p4, cuts=cuts, kappa=3, super_certificate=super_certificate)
    assert hyper_certificate.exhaustive and hyper_certificate.result
    assert hyper_certificate.evidence['component_profiles'] == {'1 20': 24}


def test_p3_is_not_hyper_connected(p3):
    certificate = is_hyper_connected(p3, concurrency=1)
    assert not certificate
    assert len(certificate.witnesses) == 3


def test_structural_certificates_are_labelled(p4):
    super_certificate = is_super_connected(p4, exhaustive=False)
    assert super_certificate.mode == STRUCTURAL
    assert super_certificate.result
    assert super_certificate.evidence['copy_kappa'] == 2
    hyper_certificate = is_hyper_connected(p4, super_certificate=super_certificate, exhaustive=False)
    assert hyper_certificate.mode == STRUCTURAL
    assert hyper_certificate.result


@pytest.mark.slow
def test_structural_super_connectivity_at_six(p6):
    certificate = is_super_connected(p6)
    assert certificate.mode == STRUCTURAL
    assert certificate.result
    assert certificate.evidence['kappa'] == 5
    assert certificate.evidence['copy_kappa'] == 4


@pytest.mark.parametrize('n', [4, 5, 6, 7])
def test_closed_identity_neighborhood_removal_leaves_one_component(n):
    removal = closed_neighborhood_removal(build_pancake(n))
    assert removal['removed'] == n
    assert removal['connected']


def test_articulation_points_agree_with_networkx(p4):
    adjacency = p4.adjacency_lists()
    graph = to_networkx(p4)
    for pair in combinations(range(p4.vertex_count), 2):
        removed = bytearray(p4.vertex_count)
        for v in pair:
            removed[v] = 1
        root = next(v for v in range(p4.vertex_count) if not removed[v])
        points, connected = _articulation_points(adjacency, removed, root, p4.vertex_count - 2)
        remaining = graph.subgraph(v for v in graph if not removed[v])
        assert connected == nx.is_connected(remaining)
        if connected:
            assert points == set(nx.articulation_points(remaining))
