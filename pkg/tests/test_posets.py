"""Decomposition into blocks, posets, and the diagonal closed forms.

Oracle: order-preserving maps counted by filtering every function
[k] -> [m] directly.
"""

import itertools
from collections import Counter
from fractions import Fraction

import pytest

from webworlds import (
    DecompositionPoset,
    IntPolynomial,
    decompose,
    decomposition_poset,
    descents,
    diagonal_colouring_polynomial,
    diagonal_mixing_value,
    linear_extensions,
    order_preserving_count,
    poset_to_json,
    surjective_order_preserving_count,
    trace,
    traces_via_posets,
    validate_diagram,
    web_world,
    world_matrices,
    world_posets,
)
from webworlds.errors import LabelNotOne, RepeatedBlocks

CHAIN2 = DecompositionPoset.from_relations(2, ((1, 2),))
ANTICHAIN2 = DecompositionPoset.from_relations(2, ())
ANTICHAIN3 = DecompositionPoset.from_relations(3, ())
VEE_POSET = DecompositionPoset.from_relations(3, ((1, 2), (1, 3)))
WEDGE_POSET = DecompositionPoset.from_relations(3, ((1, 3), (2, 3)))
DIAMOND = DecompositionPoset.from_relations(4, ((1, 2), (1, 3), (2, 4), (3, 4)))


def brute_order_preserving(poset, m):
    pairs = poset.strict_pairs()
    total = 0
    for values in itertools.product(range(1, m + 1), repeat=poset.size):
        if all(values[a - 1] <= values[b - 1] for a, b in pairs):
            total += 1
    return total


def test_nine_edge_blocks_are_the_pinned_seven(nine_edge):
    blocks = decompose(nine_edge)
    assert [b.label for b in blocks] == [1, 2, 3, 4, 5, 6, 7]
    assert [sorted(tuple(e) for e in b.edges) for b in blocks] == [
        [(1, 2, 1, 1)],
        [(3, 4, 1, 1)],
        [(5, 6, 1, 1)],
        [(2, 4, 2, 3), (4, 6, 2, 3), (4, 6, 4, 2)],
        [(3, 6, 2, 4)],
        [(5, 7, 2, 1)],
        [(1, 7, 2, 2)],
    ]


def test_crossed_pair_is_a_single_block():
    # The crossed pair cannot be written as one edge stacked on the
    # other (stacking always uncrosses), so it stays indecomposable.
    crossed = validate_diagram(((1, 2, 1, 2), (1, 2, 2, 1)))
    assert len(decompose(crossed)) == 1
    assert decomposition_poset(crossed).size == 1


def test_path4_world_poset_shapes(path4):
    posets = world_posets(web_world(path4))
    shapes = Counter(p.cover_pairs() for p in posets)
    assert shapes == Counter(
        {
            ((1, 2), (2, 3)): 2,
            ((1, 2), (1, 3)): 1,
            ((1, 3), (2, 3)): 1,
        }
    )


def test_path4_members_decompose_into_three_singletons(path4):
    for member in web_world(path4):
        assert [len(b.edges) for b in decompose(member)] == [1, 1, 1]


def test_linear_extension_counts_and_descents():
    assert len(linear_extensions(CHAIN2)) == 1
    assert len(linear_extensions(ANTICHAIN2)) == 2
    assert len(linear_extensions(VEE_POSET)) == 2
    assert len(linear_extensions(WEDGE_POSET)) == 2
    assert len(linear_extensions(DIAMOND)) == 2
    multiset = sorted(descents(e) for e in linear_extensions(ANTICHAIN3))
    assert multiset == [0, 1, 1, 1, 1, 2]


def test_descents_counts_label_drops():
    assert descents((1, 2, 3)) == 0
    assert descents((3, 1, 2)) == 1
    assert descents((3, 2, 1)) == 2


@pytest.mark.parametrize(
    "poset", [CHAIN2, ANTICHAIN2, ANTICHAIN3, VEE_POSET, WEDGE_POSET, DIAMOND]
)
@pytest.mark.parametrize("colours", [1, 2, 3, 4])
def test_order_preserving_counts_match_brute_force(poset, colours):
    assert order_preserving_count(poset, colours) == brute_order_preserving(
        poset, colours
    )


def test_pinned_order_preserving_values():
    assert order_preserving_count(VEE_POSET, 2) == 5
    assert surjective_order_preserving_count(CHAIN2, 2) == 1
    for m in range(1, 5):
        assert order_preserving_count(ANTICHAIN2, m) == m * m


def test_surjective_counts_by_inclusion_exclusion():
    # Theta(k) recovers Omega(m) when resummed over colour subsets.
    import math

    for poset in (VEE_POSET, WEDGE_POSET, DIAMOND):
        for m in range(1, 5):
            resummed = sum(
                math.comb(m, k) * surjective_order_preserving_count(poset, k)
                for k in range(1, m + 1)
            )
            assert resummed == order_preserving_count(poset, m)


def test_vee_diagonal_formulas_both_routes(vee):
    world = web_world(vee)
    poly, mix = world_matrices(world)
    i = world.index_of(vee)
    poset = decomposition_poset(vee)
    assert poset.cover_pairs() == ((1, 2), (1, 3))
    closed_poly = diagonal_colouring_polynomial(poset)
    closed_mix = diagonal_mixing_value(poset)
    assert closed_poly == IntPolynomial((0, 1, 3, 2))
    assert closed_mix == Fraction(1, 6)
    assert poly.entries[i][i] == closed_poly
    assert mix.entries[i][i] == closed_mix
    assert [
        surjective_order_preserving_count(poset, k) for k in range(1, 4)
    ] == [1, 3, 2]


def test_traces_via_posets_match_brute_matrices(path4):
    world = web_world(path4)
    poly, mix = world_matrices(world)
    poset_poly, poset_mix = traces_via_posets(world)
    assert poset_poly == trace(poly) == IntPolynomial((0, 4, 10, 6))
    assert poset_mix == trace(mix) == Fraction(1)


def test_repeated_blocks_are_rejected_by_diagonal_formulas():
    doubled = validate_diagram(((1, 2, 1, 1), (1, 2, 2, 2)))
    poset = decomposition_poset(doubled)
    with pytest.raises(RepeatedBlocks):
        diagonal_colouring_polynomial(poset)
    with pytest.raises(RepeatedBlocks):
        diagonal_mixing_value(poset)


def test_parallel_edges_block_the_poset_trace_route():
    world = web_world(validate_diagram(((1, 2, 1, 1), (1, 2, 2, 2))))
    with pytest.raises(LabelNotOne):
        traces_via_posets(world)


def test_poset_json_shape():
    assert poset_to_json(VEE_POSET) == {"k": 3, "relations": [[1, 2], [1, 3]]}


def test_nine_edge_poset_cover_relations(nine_edge):
    poset = decomposition_poset(nine_edge)
    assert poset.size == 7
    assert poset.cover_pairs() == (
        (1, 4),
        (1, 7),
        (2, 4),
        (3, 4),
        (3, 6),
        (4, 5),
        (6, 7),
    )
