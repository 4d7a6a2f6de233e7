"""Shared pinned diagrams and independent brute-force oracles.

The oracles here deliberately avoid the library's own shortcuts: the
orbit oracle closes a diagram under every per-peg permutation family,
and the rank oracle runs plain fraction Gauss elimination. Tests compare
library output against these slower twins.
"""

import itertools
from fractions import Fraction

import pytest

from webworlds import apply_permutations, validate_diagram

PATH4_EDGES = ((1, 2, 1, 1), (2, 3, 2, 1), (3, 4, 2, 1))
VEE_EDGES = ((1, 2, 1, 1), (1, 3, 2, 1), (2, 4, 2, 1))
NINE_EDGE_EDGES = (
    (1, 2, 1, 1),
    (1, 7, 2, 2),
    (2, 4, 2, 3),
    (3, 4, 1, 1),
    (3, 6, 2, 4),
    (4, 6, 2, 3),
    (4, 6, 4, 2),
    (5, 6, 1, 1),
    (5, 7, 2, 1),
)


@pytest.fixture
def path4():
    """Four-peg path diagram whose world has exactly four members."""
    return validate_diagram(PATH4_EDGES, 4)


@pytest.fixture
def vee():
    """Three-block diagram whose poset is the three-element vee."""
    return validate_diagram(VEE_EDGES, 4)


@pytest.fixture
def nine_edge():
    """Seven-peg nine-edge diagram used for the end-to-end walkthrough."""
    return validate_diagram(NINE_EDGE_EDGES, 7)


def orbit_closure(diagram):
    """Every relabelling of the diagram, by brute closure.

    Applies all products of per-peg height permutations; the result is
    the world as a set, independent of the generation order used by
    web_world.
    """
    per_peg = [
        list(itertools.permutations(range(1, h + 1))) for h in diagram.peg_heights
    ]
    return {apply_permutations(diagram, family) for family in itertools.product(*per_peg)}


def fraction_rank(rows):
    """Rank by textbook Gauss elimination over exact fractions."""
    m = [[Fraction(e) for e in row] for row in rows]
    if not m:
        return 0
    r = 0
    for col in range(len(m[0])):
        pivot = next((i for i in range(r, len(m)) if m[i][col]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        scale = m[r][col]
        m[r] = [v / scale for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                factor = m[i][col]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        r += 1
    return r
