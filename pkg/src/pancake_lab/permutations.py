"""Arithmetic on S_n in one-line notation.

Composition convention: (g s)(k) = g(s(k)), the right factor acts first. With this rule the
Cayley edge g -> g r_{1j} reverses the first j entries of g's one-line form, which is what the
pancake network does to a processor label. Every other module relies on this.
"""
import math
from dataclasses import dataclass
from typing import Iterator, List, Sequence, Tuple

from .exceptions import DomainError


@dataclass(frozen=True)
class Permutation:
    """entries[k] = pi(k + 1); values are 1-based, storage is 0-based."""

    entries: Tuple[int, ...]

    def __post_init__(self):
        entries = tuple(int(v) for v in self.entries)
        if sorted(entries) != list(range(1, len(entries) + 1)):
            raise DomainError(f'{list(self.entries)} is not a permutation of 1..{len(entries)}')
        object.__setattr__(self, 'entries', entries)

    @property
    def n(self) -> int:
        return len(self.entries)

    def __call__(self, k: int) -> int:
        return self.entries[k - 1]

    def __mul__(self, other: 'Permutation') -> 'Permutation':
        return compose(self, other)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def to_json(self) -> List[int]:
        return list(self.entries)

    def __repr__(self):
        return f'Permutation({list(self.entries)})'


class GeneratorSet:
    """PR_n = {r_{1j} : 2 <= j <= n}; reversals[j - 2] holds r_{1j}."""

    def __init__(self, n: int):
        if n < 2:
            raise DomainError(f'PR_n needs n >= 2, got {n}')
        self.n = n
        self.reversals = [prefix_reversal(n, j) for j in range(2, n + 1)]

    def __iter__(self) -> Iterator[Permutation]:
        return iter(self.reversals)

    def __len__(self):
        return len(self.reversals)

    def __contains__(self, p: Permutation) -> bool:
        return p in self.reversals

    def index_of(self, p: Permutation) -> int:
        """j such that p = r_{1j}."""
        return self.reversals.index(p) + 2


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def prefix_reversal(n: int, j: int) -> Permutation:
    if not 2 <= j <= n:
        raise DomainError(f'prefix reversal r_(1,{j}) needs 2 <= j <= n = {n}')
    return Permutation(tuple(range(j, 0, -1)) + tuple(range(j + 1, n + 1)))


def compose(g: Permutation, s: Permutation) -> Permutation:
    if g.n != s.n:
        raise DomainError(f'cannot compose permutations of degree {g.n} and {s.n}')
    return Permutation(tuple(g.entries[v - 1] for v in s.entries))


def inverse(p: Permutation) -> Permutation:
    result = [0] * p.n
    for position, value in enumerate(p.entries, start=1):
        result[value - 1] = position
    return Permutation(tuple(result))


def reverse_prefix(entries: Sequence[int], j: int) -> Tuple[int, ...]:
    """One-line form of g r_{1j} given g's one-line form."""
    return tuple(entries[j - 1::-1]) + tuple(entries[j:])


def perm_rank(p: Permutation) -> int:
    """Lexicographic rank via the Lehmer code."""
    n = p.n
    rank = 0
    remaining = list(range(1, n + 1))
    for position, value in enumerate(p.entries):
        smaller = remaining.index(value)
        rank += smaller * math.factorial(n - 1 - position)
        remaining.pop(smaller)
    return rank


def perm_unrank(r: int, n: int) -> Permutation:
    if n < 1:
        raise DomainError(f'degree must be positive, got {n}')
    if not 0 <= r < math.factorial(n):
        raise DomainError(f'rank {r} outside [0, {math.factorial(n) - 1}] for n = {n}')
    remaining = list(range(1, n + 1))
    entries = []
    for position in range(n):
        digit, r = divmod(r, math.factorial(n - 1 - position))
        entries.append(remaining.pop(digit))
    return Permutation(tuple(entries))


def transposition(n: int, a: int, b: int) -> Permutation:
    entries = list(range(1, n + 1))
    entries[a - 1], entries[b - 1] = b, a
    return Permutation(tuple(entries))


def embed(p: Permutation, n: int) -> Permutation:
    """p in S_m viewed in S_n (m <= n), fixing m+1..n."""
    if p.n > n:
        raise DomainError(f'cannot embed a degree {p.n} permutation into S_{n}')
    return Permutation(p.entries + tuple(range(p.n + 1, n + 1)))
