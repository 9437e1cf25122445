"""Expected outcomes per n, kept as data apart from the code that checks them."""
import math
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from .exceptions import DomainError


@dataclass(frozen=True)
class Expectation:
    n: int
    # kappa(P_n) = n - 1, proved for every n >= 3
    kappa: int
    # girth 6, proved for every n >= 3
    girth: int
    # pancake numbers, computed
    diameter: int
    # P_3 is the listed exception: its antipodal pairs are minimum cuts
    super_connected: bool
    hyper_connected: bool
    # exactly the n blocks B^(i), proved for every n >= 3
    eds_count: int
    # dihedral of order 12 at n = 3, order 48 at n = 4, L(S_n) from n = 5 on
    aut_order: int
    grr: bool
    # one orbit per prefix reversal under a regular group; n = 3, 4 counted by the search
    edge_orbits: int
    # inner automorphisms of S_n fixing PR_n setwise, computed by conjugation; None outside 3..6
    stabilizer_size: Optional[int]
    # sets X with N(X) = B^(i), |X| = (n-1)!: B_(i) alone from n = 4 on, computed at n = 3 and 4
    neighborhood_solutions: int


def _regular(n: int, diameter: int) -> Expectation:
    return Expectation(n=n, kappa=n - 1, girth=6, diameter=diameter, super_connected=True, hyper_connected=True,
                       eds_count=n, aut_order=math.factorial(n), grr=True, edge_orbits=n - 1,
                       stabilizer_size=1 if n <= 6 else None, neighborhood_solutions=1)


EXPECTATIONS: Dict[int, Expectation] = {
    3: Expectation(n=3, kappa=2, girth=6, diameter=3, super_connected=False, hyper_connected=False, eds_count=3,
                   aut_order=12, grr=False, edge_orbits=1, stabilizer_size=2, neighborhood_solutions=2),
    4: Expectation(n=4, kappa=3, girth=6, diameter=4, super_connected=True, hyper_connected=True, eds_count=4,
                   aut_order=48, grr=False, edge_orbits=2, stabilizer_size=2, neighborhood_solutions=1),
    5: _regular(5, 5),
    6: _regular(6, 7),
    7: _regular(7, 8),
    8: _regular(8, 9),
}

# P_3 minimum cuts: six neighbourhoods N(v) and three antipodal pairs splitting C_6 into two paths
P3_CUT_PROFILES = {(1, 3): 6, (2, 2): 3}


@dataclass(frozen=True)
class CandidateSet:
    """A published candidate X for N(X) = B^(i), in one-line form."""
    n: int
    i: int
    members: Tuple[Tuple[int, ...], ...]
    satisfies: bool


CANDIDATE_SETS = (
    # (1 2) -> [2,1,3]; (1 3 2) sends 1->3, 3->2, 2->1 -> [3,1,2]
    CandidateSet(n=3, i=1, members=((2, 1, 3), (3, 1, 2)), satisfies=True),
    # (1 2) -> [2,1,3,4]; (1 2)(3 4) -> [2,1,4,3]; (1 3 2) -> [3,1,2,4]; (1 3 4 2) sends 1->3, 3->4,
    # 4->2, 2->1 -> [3,1,4,2]; (1 4 2) -> [4,1,3,2]; (1 4 3 2) -> [4,1,2,3].
    # This is {pi : pi(2) = 1}; r_14 sends [2,1,3,4] to [4,3,1,2], outside B^(1), so N(X) != B^(1).
    CandidateSet(n=4, i=1, members=((2, 1, 3, 4), (2, 1, 4, 3), (3, 1, 2, 4), (3, 1, 4, 2), (4, 1, 3, 2),
                                   (4, 1, 2, 3)), satisfies=False),
)


def expectation_for(n: int) -> Expectation:
    if n not in EXPECTATIONS:
        raise DomainError(f'no expected outcomes recorded for n = {n}')
    return EXPECTATIONS[n]


def candidate_sets_for(n: int):
    return [candidate for candidate in CANDIDATE_SETS if candidate.n == n]
