"""The three closed-form families and the word statistics behind them.

Oracles: direct word enumeration for split and rule counts, brute
reconstruction via the generic matrix machinery, and classical
identities for the Stirling and Eulerian tables.
"""

import itertools
import math
from fractions import Fraction

import pytest

from webworlds import (
    Colouring,
    IntPolynomial,
    chain_diagram,
    chain_matrices,
    chain_traces,
    cycle_diagram,
    cycle_matrices,
    cycle_traces,
    eulerian,
    fan_diagram,
    fan_matrices,
    fan_traces,
    reconstruct,
    stirling2,
    trace,
    validate_diagram,
    web_world,
    world_matrices,
)
from webworlds.cases import (
    ComparisonRules,
    ComparisonSplit,
    adjacent_comparisons,
    adjacent_distinct_counts,
    chain_reconstruction_count,
    chain_reconstruction_count_by_splits,
    chain_result_signs,
    chain_signs,
    chain_world,
    colour_compose,
    colour_decompose,
    comparison_rules,
    cycle_reconstruction_count,
    cycle_reconstruction_count_by_splits,
    cycle_result_signs,
    cycle_sign_vectors,
    exact_split_word_count,
    fan_entry_mixing,
    fan_entry_polynomial,
    fan_permutation,
    fan_reconstruction_count,
    fan_world,
    minimal_colour_blocks,
    minimal_colour_count,
    minimal_colouring,
    sign_vectors,
    stable_sort_permutation,
    word_satisfies,
)
from webworlds.errors import BadRange, LengthMismatch


# ---------------------------------------------------------------------------
# Number tables.
# ---------------------------------------------------------------------------


def test_stirling_numbers():
    assert stirling2(3, 2) == 3
    assert stirling2(5, 3) == 25
    for n in range(1, 8):
        assert stirling2(n, 1) == 1
        assert stirling2(n, n) == 1
        for k in range(1, n):
            assert stirling2(n + 1, k + 1) == (k + 1) * stirling2(n, k + 1) + stirling2(n, k)


def test_eulerian_numbers():
    assert [eulerian(3, k) for k in (1, 2, 3)] == [1, 4, 1]
    for n in range(1, 7):
        assert eulerian(n, 1) == 1
        assert sum(eulerian(n, k) for k in range(1, n + 1)) == math.factorial(n)


def test_shifted_stirling_identity():
    # Alternating binomial sum of (i+1)^n collapses to a Stirling column.
    for n in range(0, 7):
        for k in range(0, n + 1):
            lhs = sum(
                (-1) ** (k - i) * math.comb(k, i) * (i + 1) ** n for i in range(k + 1)
            )
            assert lhs == math.factorial(k) * stirling2(n + 1, k + 1)


# ---------------------------------------------------------------------------
# Word utilities.
# ---------------------------------------------------------------------------


def test_stable_sort_permutation_groups_positions_by_colour():
    assert stable_sort_permutation((3, 1, 1, 2, 1, 2, 2, 3)) == (2, 3, 5, 4, 6, 7, 1, 8)
    assert stable_sort_permutation((1, 1, 1)) == (1, 2, 3)


def test_minimal_colouring_pinned_example():
    source = (2, 8, 5, 4, 1, 3, 7, 6)
    target = (8, 5, 1, 4, 3, 7, 2, 6)
    assert minimal_colour_blocks(source, target) == ((8, 5, 1), (4, 3, 7), (2, 6))
    assert minimal_colour_count(source, target) == 3
    assert minimal_colouring(source, target) == (1, 3, 2, 2, 1, 3, 2, 1)


def test_minimal_colouring_reconstructs_the_target():
    for source in itertools.permutations(range(1, 4)):
        for target in itertools.permutations(range(1, 4)):
            m = minimal_colour_count(source, target)
            colouring = Colouring(minimal_colouring(source, target), m)
            assert reconstruct(fan_diagram(source), colouring) == fan_diagram(target)


def test_colour_decompose_pinned_example():
    word, repeats = colour_decompose((4, 2, 1, 1, 1, 2, 3, 3, 3, 4, 4, 1))
    assert word == (4, 2, 1, 2, 3, 4, 1)
    assert repeats == (4, 5, 8, 9, 11)
    assert colour_compose(word, repeats) == (4, 2, 1, 1, 1, 2, 3, 3, 3, 4, 4, 1)


def test_colour_compose_round_trips_all_small_words():
    for length in range(1, 6):
        for assignment in itertools.product(range(1, 4), repeat=length):
            word, repeats = colour_decompose(assignment)
            assert colour_compose(word, repeats) == assignment


def test_colour_compose_input_checks():
    assert colour_compose((1, 2), (3,)) == (1, 2, 2)
    with pytest.raises(BadRange):
        colour_compose((1, 1), ())
    with pytest.raises(BadRange):
        colour_compose((1, 2), (1,))
    with pytest.raises(BadRange):
        colour_compose((1, 2), (4,))
    with pytest.raises(BadRange):
        colour_compose((1, 2), (3, 3))


def test_adjacent_distinct_counts_pinned_and_brute():
    assert adjacent_distinct_counts(3, 2) == (2, 0, 2)
    assert adjacent_distinct_counts(1, 1) == (1, 0, 1)
    for n in range(2, 6):
        assert adjacent_distinct_counts(n, 1) == (0, 0, 0)
    for n in range(1, 6):
        for k in range(1, n + 1):
            words = [
                w
                for w in itertools.product(range(1, k + 1), repeat=n)
                if set(w) == set(range(1, k + 1))
                and all(a != b for a, b in zip(w, w[1:]))
            ]
            differ = sum(1 for w in words if w[0] != w[-1])
            expected = (len(words), differ, len(words) - differ)
            assert adjacent_distinct_counts(n, k) == expected


def test_adjacent_comparisons_classifies_steps():
    split = adjacent_comparisons((2, 2, 1, 3))
    assert split.plateaus == frozenset({1})
    assert split.descents == frozenset({2})
    assert split.ascents == frozenset({3})
    wrapped = adjacent_comparisons((2, 2, 1, 3), cyclic=True)
    assert wrapped.descents == frozenset({2, 4})


def test_comparison_split_must_be_disjoint():
    with pytest.raises(BadRange):
        ComparisonSplit(frozenset({1}), frozenset({1}), frozenset())


def test_exact_split_word_count_matches_enumeration():
    for length in range(2, 6):
        for colours in range(1, length + 1):
            words = [
                w
                for w in itertools.product(range(1, colours + 1), repeat=length)
                if set(w) == set(range(1, colours + 1))
            ]
            for cyclic in (False, True):
                seen = {}
                for w in words:
                    split = adjacent_comparisons(w, cyclic=cyclic)
                    seen[split] = seen.get(split, 0) + 1
                for split, count in seen.items():
                    assert (
                        exact_split_word_count(length, colours, split, cyclic=cyclic)
                        == count
                    )


def test_comparison_rules_group_mapping():
    rules = comparison_rules((1, 1, -1, -1), (1, -1, 1, -1))
    assert rules.weak_ascents == frozenset({1})
    assert rules.strict_descents == frozenset({2})
    assert rules.strict_ascents == frozenset({3})
    assert rules.weak_descents == frozenset({4})
    with pytest.raises(LengthMismatch):
        comparison_rules((1,), (1, -1))


def test_word_satisfies_applies_each_rule():
    rules = ComparisonRules(
        strict_descents=frozenset({1}),
        weak_descents=frozenset(),
        weak_ascents=frozenset({2}),
        strict_ascents=frozenset(),
    )
    assert word_satisfies((2, 1, 1), rules)
    assert word_satisfies((2, 1, 2), rules)
    assert not word_satisfies((1, 2, 3), rules)


# ---------------------------------------------------------------------------
# Fan worlds (one tall peg).
# ---------------------------------------------------------------------------


def test_fan_diagram_round_trip():
    for n in range(1, 5):
        for perm in itertools.permutations(range(1, n + 1)):
            diagram = fan_diagram(perm)
            assert diagram.num_pegs == n + 1
            assert fan_permutation(diagram) == perm
    with pytest.raises(BadRange):
        fan_permutation(validate_diagram(((1, 2, 1, 1), (3, 4, 1, 1))))


def test_fan_world_collects_all_permutations():
    world = fan_world(3)
    assert len(world) == 6
    perms = {fan_permutation(d) for d in world}
    assert perms == set(itertools.permutations(range(1, 4)))


def test_fan_entries_against_brute_force():
    world, poly, mix = fan_matrices(3)
    brute_poly, brute_mix = world_matrices(world)
    assert poly.entries == brute_poly.entries
    assert mix.entries == brute_mix.entries


def test_fan_reconstruction_count_is_binomial():
    source = (2, 1, 3)
    target = (3, 1, 2)
    m = minimal_colour_count(source, target)
    for colours in range(1, 4):
        assert fan_reconstruction_count(source, target, colours) == (
            math.comb(3 - m, colours - m) if colours >= m else 0
        )
    with pytest.raises(BadRange):
        fan_reconstruction_count(source, target, 0)
    with pytest.raises(BadRange):
        fan_reconstruction_count(source, target, 4)


def test_fan_two_element_matrices():
    _, poly, mix = fan_matrices(2)
    x = IntPolynomial((0, 1))
    x2 = IntPolynomial((0, 0, 1))
    assert poly.entries == (
        (x + x2, x2),
        (x2, x + x2),
    )
    half = Fraction(1, 2)
    assert mix.entries == ((half, -half), (-half, half))


def test_fan_entry_closed_forms():
    source = (1, 2, 3)
    assert fan_entry_polynomial(source, source) == IntPolynomial((0, 1, 2, 1))
    assert fan_entry_mixing(source, source) == Fraction(1, 3)
    reverse = (3, 2, 1)
    assert fan_entry_polynomial(source, reverse) == IntPolynomial((0, 0, 0, 1))
    assert fan_entry_mixing(source, reverse) == Fraction(1, 3)


def test_fan_traces_closed_forms():
    poly_trace, mix_trace = fan_traces(3)
    assert poly_trace == IntPolynomial((0, 6, 12, 6))
    assert mix_trace == Fraction(2)
    world, poly, mix = fan_matrices(3)
    assert trace(poly) == poly_trace
    assert trace(mix) == mix_trace


# ---------------------------------------------------------------------------
# Chain worlds (signs on the interior pegs of a path).
# ---------------------------------------------------------------------------


def test_chain_diagram_encoding():
    assert chain_diagram((1,)) == validate_diagram(((1, 2, 1, 1), (2, 3, 2, 1)))
    assert chain_diagram((-1,)) == validate_diagram(((1, 2, 1, 2), (2, 3, 1, 1)))
    assert chain_diagram(()) == validate_diagram(((1, 2, 1, 1),))
    with pytest.raises(BadRange):
        chain_diagram((0,))


def test_chain_signs_round_trip():
    for n in range(0, 4):
        for signs in sign_vectors(n):
            assert chain_signs(chain_diagram(signs)) == signs
    with pytest.raises(BadRange):
        chain_signs(fan_diagram((1, 2)))


def test_chain_two_is_the_path4_world(path4):
    world = chain_world(2)
    assert set(world) == set(web_world(path4))


def test_chain_result_signs_identity_assignment():
    for signs in sign_vectors(3):
        assignment = (1,) * 4
        assert chain_result_signs(signs, assignment) == signs


def test_chain_counts_match_brute_restack():
    # f counts by comparison rules must agree with restacking the
    # concrete diagrams through the generic machinery.
    for n in (1, 2):
        vectors = sign_vectors(n)
        world = chain_world(n)
        poly, _ = world_matrices(world)
        for source in vectors:
            i = world.index_of(chain_diagram(source))
            for target in vectors:
                j = world.index_of(chain_diagram(target))
                for colours in range(1, n + 2):
                    f = chain_reconstruction_count(source, target, colours)
                    assert f == poly.entries[i][j].coefficient(colours)
                    assert f == chain_reconstruction_count_by_splits(
                        source, target, colours
                    )


def test_chain_matrices_and_traces():
    vectors, poly, mix = chain_matrices(2)
    assert vectors == ((1, 1), (1, -1), (-1, 1), (-1, -1))
    closed_poly, closed_mix = chain_traces(2)
    assert trace(poly) == closed_poly == IntPolynomial((0, 4, 10, 6))
    assert trace(mix) == closed_mix == Fraction(1)
    for n in (0, 1, 3):
        _, poly_n, mix_n = chain_matrices(n)
        poly_t, mix_t = chain_traces(n)
        assert trace(poly_n) == poly_t
        assert trace(mix_n) == mix_t == Fraction(1)


def test_chain_single_edge_case():
    _, poly, mix = chain_matrices(0)
    assert poly.entries == ((IntPolynomial((0, 1)),),)
    assert mix.entries == ((Fraction(1),),)


# ---------------------------------------------------------------------------
# Cycle worlds (signs around a ring of pegs).
# ---------------------------------------------------------------------------


def test_cycle_diagram_encoding():
    signs = (-1, 1, -1, 1, 1, 1)
    diagram = cycle_diagram(signs)
    assert diagram.num_pegs == 6
    wrap = [e for e in diagram.edges if (e.left_peg, e.right_peg) == (1, 6)]
    assert wrap == [(1, 6, 2, 2)]
    with pytest.raises(BadRange):
        cycle_diagram((1,))


def test_cycle_sign_vectors_round_trip():
    for n in (2, 3, 4):
        for signs in sign_vectors(n):
            assert signs in cycle_sign_vectors(cycle_diagram(signs))
    # Two pegs give a doubled cover: two sign vectors per diagram.
    assert len(cycle_sign_vectors(cycle_diagram((1, -1)))) == 2
    assert len(cycle_sign_vectors(cycle_diagram((1, 1, -1)))) == 1


def test_cycle_result_signs_identity_assignment():
    for signs in sign_vectors(3):
        assert cycle_result_signs(signs, (1, 1, 1)) == signs


def test_cycle_counts_match_brute_restack():
    # Sign-level brute force: count surjective words whose restack of
    # the source diagram lands on the target sign vector.
    for n in (2, 3):
        vectors = sign_vectors(n)
        for source in vectors:
            for target in vectors:
                for colours in range(1, n + 1):
                    brute = sum(
                        1
                        for word in itertools.product(
                            range(1, colours + 1), repeat=n
                        )
                        if set(word) == set(range(1, colours + 1))
                        and cycle_result_signs(source, word) == target
                    )
                    f = cycle_reconstruction_count(source, target, colours)
                    assert f == brute
                    assert f == cycle_reconstruction_count_by_splits(
                        source, target, colours
                    )


def test_cycle_matrices_and_traces():
    for n in (2, 3):
        vectors, poly, mix = cycle_matrices(n)
        assert vectors == sign_vectors(n)
        closed_poly, closed_mix = cycle_traces(n)
        assert trace(poly) == closed_poly
        assert trace(mix) == closed_mix == Fraction(n + 1)
    assert cycle_traces(3)[0] == IntPolynomial((0, 8, 12, 6))
    with pytest.raises(BadRange):
        cycle_matrices(1)
