import re

import pytest

from pancake_lab import PancakeLab, Permutation, build_pancake


def from_cycles(text, n):
    """One-line form of a product of disjoint cycles, e.g. '(1 3 2)' -> [3, 1, 2]: each symbol maps to the next."""
    entries = list(range(1, n + 1))
    for cycle in re.findall(r'\(([^)]*)\)', text):
        symbols = [int(s) for s in cycle.split()]
        for position, symbol in enumerate(symbols):
            entries[symbol - 1] = symbols[(position + 1) % len(symbols)]
    return Permutation(tuple(entries))


@pytest.fixture
def cycles():
    return from_cycles


@pytest.fixture(scope='session')
def p3():
    return build_pancake(3)


@pytest.fixture(scope='session')
def p4():
    return build_pancake(4)


@pytest.fixture(scope='session')
def p5():
    return build_pancake(5)


@pytest.fixture(scope='session')
def p6():
    return build_pancake(6)


@pytest.fixture(autouse=True)
def fresh_report_cache():
    PancakeLab._PancakeLab__cache.clear()
    yield
