from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tests.strategies import contractions, ordered_graphs
from tournament_eh.blockade import (
    Blockade,
    Verdict,
    all_ordered_graphs,
    check_support_invariance,
    find_uniform_minor,
    is_support_uniform,
    rainbow_copy,
    trace,
)
from tournament_eh.catalog import CYCLIC_TRIANGLE
from tournament_eh.core import OrderedGraph, transitive_tournament
from tournament_eh.errors import (
    BudgetExhausted,
    InvalidBlockade,
    SearchFailed,
    VertexNotInBlockade,
)
from tournament_eh.search import contains_ordered

EDGE = OrderedGraph.from_one_based(2, [(1, 2)])
# one edge joining the first two of three blocks
LONE_EDGE = OrderedGraph.from_one_based(6, [(2, 4)])
CROSSING = OrderedGraph.from_one_based(4, [(1, 3)])
THREE_PAIRS = Blockade.consecutive(6, 3, 2)


def test_blockade_validation() -> None:
    with pytest.raises(InvalidBlockade):
        Blockade.of(4, [[0], []])
    with pytest.raises(InvalidBlockade):
        Blockade.of(4, [[0, 1], [1, 2]])
    with pytest.raises(InvalidBlockade):
        Blockade.of(4, [[0], [4]])
    with pytest.raises(InvalidBlockade):
        Blockade.consecutive(5, 3, 2)


def test_consecutive_blockade() -> None:
    blockade = Blockade.consecutive(7, 3, 2)
    assert blockade.length == 3 and blockade.width == 2
    assert blockade.respectful
    assert blockade.block_of(3) == 1
    assert blockade.block_indices() == [0, 0, 1, 1, 2, 2, -1]
    assert blockade.union([0, 2]) == 0b110011
    assert blockade.one_based() == [[1, 2], [3, 4], [5, 6]]
    with pytest.raises(VertexNotInBlockade):
        blockade.block_of(6)


def test_interleaved_blocks_are_not_respectful() -> None:
    assert not Blockade.of(4, [[0, 2], [1, 3]]).respectful
    assert Blockade.singletons(3).width == 1


def test_sub_blockades_and_contractions() -> None:
    blockade = Blockade.consecutive(6, 3, 2)
    assert blockade.sub_blockade([2, 0]).one_based() == [[1, 2], [5, 6]]
    with pytest.raises(InvalidBlockade):
        blockade.sub_blockade([3])
    contracted = blockade.contract([[0], [2, 3], [5]])
    assert contracted.width == 1
    with pytest.raises(InvalidBlockade):
        blockade.contract([[0], [1]])
    with pytest.raises(InvalidBlockade):
        blockade.contract([[0], [1], [5]])


def test_rainbow_copies() -> None:
    singletons = Blockade.singletons(4)
    assert rainbow_copy(OrderedGraph.edgeless(4), singletons, EDGE) is None
    assert rainbow_copy(
        OrderedGraph.edgeless(4), singletons, OrderedGraph.edgeless(2)
    ) == (0, 1)
    with pytest.raises(InvalidBlockade):
        rainbow_copy(OrderedGraph.edgeless(5), singletons, EDGE)
    with pytest.raises(TypeError):
        rainbow_copy(transitive_tournament(4), singletons, EDGE)


def test_tournament_traces() -> None:
    host = transitive_tournament(4)
    singletons = Blockade.singletons(4)
    assert trace(host, singletons, CYCLIC_TRIANGLE) == frozenset()
    assert trace(host, singletons, transitive_tournament(3)) == frozenset(
        frozenset(s) for s in combinations(range(4), 3)
    )


def test_trace_lists_supports() -> None:
    blockade = Blockade.consecutive(6, 3, 2)
    assert trace(LONE_EDGE, blockade, EDGE) == {frozenset({0, 1})}


def test_all_ordered_graphs() -> None:
    assert len(all_ordered_graphs(3)) == 1 + 2 + 8
    assert len(all_ordered_graphs(4)) == 75


def test_uniform_blockade() -> None:
    result = is_support_uniform(CROSSING, Blockade.consecutive(4, 2, 2), 4)
    assert result.uniform


def test_non_uniform_blockade_names_the_pattern() -> None:
    blockade = Blockade.consecutive(6, 3, 2)
    result = is_support_uniform(LONE_EDGE, blockade, 2)
    assert not result.uniform
    assert result.pattern == EDGE
    assert result.present == {frozenset({0, 1})}
    assert result.missing == frozenset({0, 2})


def test_uniformity_needs_explicit_patterns_beyond_four() -> None:
    blockade = Blockade.consecutive(6, 3, 2)
    with pytest.raises(BudgetExhausted):
        is_support_uniform(LONE_EDGE, blockade, 5)
    assert is_support_uniform(
        LONE_EDGE, blockade, 5, patterns=[OrderedGraph.edgeless(3)]
    ).uniform


def test_invariance_refuted_by_a_contraction() -> None:
    blockade = Blockade.consecutive(4, 2, 2)
    result = check_support_invariance(CROSSING, blockade, Fraction(1, 2), 2)
    assert result.verdict is Verdict.REFUTED
    assert result.pattern == OrderedGraph.edgeless(2)
    assert result.contraction is not None


def test_invariance_with_full_width_is_trivial() -> None:
    blockade = Blockade.consecutive(4, 2, 2)
    result = check_support_invariance(CROSSING, blockade, 1, 2)
    assert result.verdict is Verdict.VERIFIED_EXHAUSTIVE
    assert result.examined == 1


def test_invariance_of_an_edgeless_host() -> None:
    blockade = Blockade.consecutive(6, 3, 2)
    result = check_support_invariance(
        OrderedGraph.edgeless(6), blockade, Fraction(1, 2), 3
    )
    assert result.verdict is Verdict.VERIFIED_EXHAUSTIVE
    assert result.examined == 27


def test_sampled_invariance_is_never_verified() -> None:
    blockade = Blockade.consecutive(4, 2, 2)
    result = check_support_invariance(
        CROSSING,
        blockade,
        Fraction(1, 2),
        2,
        budget=2,
        rng=np.random.default_rng(7),
    )
    assert result.verdict in (Verdict.REFUTED, Verdict.UNDETERMINED)
    assert result.examined <= 2


def test_uniform_minor_of_an_edgeless_host() -> None:
    blockade = Blockade.consecutive(6, 3, 2)
    minor = find_uniform_minor(
        OrderedGraph.edgeless(6), blockade, 2, 2, Fraction(1, 2)
    )
    assert minor.one_based() == [[1, 2], [3, 4]]


def test_uniform_minor_drops_the_unbalanced_block() -> None:
    blockade = Blockade.consecutive(6, 3, 2)
    minor = find_uniform_minor(LONE_EDGE, blockade, 2, 2, Fraction(1, 2))
    assert minor.length == 2
    assert is_support_uniform(LONE_EDGE, minor, 2).uniform


def test_uniform_minor_failures() -> None:
    blockade = Blockade.consecutive(6, 2, 3)
    with pytest.raises(SearchFailed):
        find_uniform_minor(LONE_EDGE, blockade, 3, 2, Fraction(1, 2))
    with pytest.raises(SearchFailed):
        find_uniform_minor(LONE_EDGE, blockade, 0, 2, Fraction(1, 2))


def test_uniformity_passes_to_sub_blockades() -> None:
    for host, blockade, tau in (
        (OrderedGraph.edgeless(6), THREE_PAIRS, 3),
        (CROSSING, Blockade.consecutive(4, 2, 2), 4),
    ):
        assert is_support_uniform(host, blockade, tau).uniform
        for size in range(1, blockade.length + 1):
            for kept in combinations(range(blockade.length), size):
                sub = blockade.sub_blockade(kept)
                assert is_support_uniform(host, sub, tau).uniform


@settings(max_examples=40, deadline=None)
@given(ordered_graphs(6, 6), st.sets(st.integers(0, 2), min_size=1))
def test_uniform_blockades_stay_uniform_on_sub_blockades(
    host: OrderedGraph, kept: set[int]
) -> None:
    if is_support_uniform(host, THREE_PAIRS, 2).uniform:
        sub = THREE_PAIRS.sub_blockade(kept)
        assert is_support_uniform(host, sub, 2).uniform


@given(contractions(THREE_PAIRS), st.sets(st.integers(0, 2), min_size=1))
def test_sub_blockades_commute_with_contraction(
    contraction: Blockade, kept: set[int]
) -> None:
    chosen = [sorted(block) for block in contraction.blocks]
    assert contraction.sub_blockade(kept) == THREE_PAIRS.sub_blockade(
        kept
    ).contract([chosen[i] for i in sorted(kept)])


@settings(max_examples=40, deadline=None)
@given(ordered_graphs(6, 6), contractions(THREE_PAIRS))
def test_traces_shrink_under_contraction(
    host: OrderedGraph, contraction: Blockade
) -> None:
    for pattern in all_ordered_graphs(3):
        assert trace(host, contraction, pattern) <= trace(
            host, THREE_PAIRS, pattern
        )


@settings(max_examples=60, deadline=None)
@given(ordered_graphs(1, 7), ordered_graphs(1, 4))
def test_singleton_rainbow_copies_are_plain_copies(
    host: OrderedGraph, pattern: OrderedGraph
) -> None:
    copy = rainbow_copy(host, Blockade.singletons(host.n), pattern)
    assert (copy is None) == (contains_ordered(host, pattern) is None)
