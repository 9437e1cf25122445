import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from pancake_lab.exceptions import DomainError
from pancake_lab.graph_core import lex_permutation_table, rank_rows
from pancake_lab.permutations import (GeneratorSet, Permutation, compose, embed, identity, inverse, perm_rank,
                                      perm_unrank, prefix_reversal, reverse_prefix, transposition)

permutations = st.integers(min_value=2, max_value=7).flatmap(
    lambda n: st.permutations(list(range(1, n + 1)))).map(lambda entries: Permutation(tuple(entries)))


def test_rank_order_for_three_symbols():
    expected = [[1, 2, 3], [1, 3, 2], [2, 1, 3], [2, 3, 1], [3, 1, 2], [3, 2, 1]]
    assert [perm_unrank(r, 3).to_json() for r in range(6)] == expected


def test_identity_and_reverse_ranks():
    assert perm_rank(identity(5)) == 0
    assert perm_rank(Permutation((5, 4, 3, 2, 1))) == math.factorial(5) - 1


@given(permutations)
def test_rank_unrank_round_trip(p):
    assert perm_unrank(perm_rank(p), p.n) == p


@pytest.mark.parametrize('n', range(1, 7))
def test_vectorised_rank_agrees_exhaustively(n):
    table = lex_permutation_table(n)
    assert np.array_equal(rank_rows(table), np.arange(math.factorial(n)))
    assert all(perm_rank(Permutation(tuple(int(x) for x in row))) == r for r, row in enumerate(table))


@given(permutations, st.data())
def test_right_multiplication_reverses_a_prefix(p, data):
    j = data.draw(st.integers(min_value=2, max_value=p.n))
    assert compose(p, prefix_reversal(p.n, j)).entries == reverse_prefix(p.entries, j)


@given(permutations)
def test_prefix_reversals_are_involutions(p):
    for r in GeneratorSet(p.n):
        assert compose(compose(p, r), r) == p


@given(permutations)
def test_inverse(p):
    assert compose(p, inverse(p)) == identity(p.n)
    assert compose(inverse(p), p) == identity(p.n)


@st.composite
def triples(draw):
    n = draw(st.integers(min_value=2, max_value=7))
    same_degree = st.permutations(list(range(1, n + 1))).map(lambda entries: Permutation(tuple(entries)))
    return draw(same_degree), draw(same_degree), draw(same_degree)


@given(triples())
def test_composition_is_associative(triple):
    a, b, c = triple
    assert compose(compose(a, b), c) == compose(a, compose(b, c))


@given(permutations)
def test_identity_is_neutral_on_both_sides(p):
    assert compose(identity(p.n), p) == p
    assert compose(p, identity(p.n)) == p


@pytest.mark.parametrize('n', [2, 3, 4, 5])
def test_identity_times_a_reversal(n):
    for r in GeneratorSet(n):
        assert compose(identity(n), r) == r


def test_composition_applies_the_right_factor_first():
    g = Permutation((2, 3, 1))
    s = Permutation((3, 1, 2))
    assert (g * s)(1) == g(s(1))
    assert compose(g, s) == Permutation((1, 2, 3))


def test_cycle_notation_helper(cycles):
    assert cycles('(1 3 2)', 3) == Permutation((3, 1, 2))
    assert cycles('(1 2)(3 4)', 4) == Permutation((2, 1, 4, 3))
    assert cycles('(1 3 4 2)', 4) == Permutation((3, 1, 4, 2))


def test_prefix_reversal_bounds():
    assert prefix_reversal(4, 4) == Permutation((4, 3, 2, 1))
    with pytest.raises(DomainError):
        prefix_reversal(4, 1)
    with pytest.raises(DomainError):
        prefix_reversal(4, 5)


def test_invalid_arguments():
    with pytest.raises(DomainError):
        Permutation((1, 1, 2))
    with pytest.raises(DomainError):
        compose(identity(3), identity(4))
    with pytest.raises(DomainError):
        perm_unrank(6, 3)
    with pytest.raises(DomainError):
        GeneratorSet(1)


def test_generator_set():
    generators = GeneratorSet(5)
    assert len(generators) == 4
    assert generators.index_of(Permutation((3, 2, 1, 4, 5))) == 3
    assert identity(5) not in generators


def test_copy_map_lands_in_the_last_symbol_block():
    # (j, n) pi for pi in S_(n-1) ends with j
    pi = Permutation((2, 3, 1))
    image = compose(transposition(4, 2, 4), embed(pi, 4))
    assert image.entries[-1] == 2
    assert image == Permutation((4, 3, 1, 2))
