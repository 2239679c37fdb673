import pytest
from hypothesis import given

from tests.strategies import (
    graph_walks,
    numbered_tournaments,
    ordered_graphs,
    tournaments,
)
from tournament_eh.core import (
    Numbering,
    OrderedGraph,
    Tournament,
    backedge_graph,
    build_tournament,
    check_numbering,
    complement,
    inverse,
    relabel,
    reverse,
    reverse_order,
    reversed_numbering,
    tournament_from_backedges,
    transitive_tournament,
    walk_imbalance,
)
from tournament_eh.errors import (
    AsymmetryViolation,
    InvalidGraph,
    InvalidWalk,
    NumberingSizeMismatch,
    ReflexivePair,
    SizeOutOfRange,
)


def test_build_tournament_rejects_self_loops() -> None:
    with pytest.raises(ReflexivePair):
        build_tournament(2, [(0, 0)])


def test_build_tournament_rejects_missing_pairs() -> None:
    with pytest.raises(AsymmetryViolation):
        build_tournament(3, [(0, 1), (1, 2)])


def test_build_tournament_rejects_both_directions() -> None:
    with pytest.raises(AsymmetryViolation):
        build_tournament(2, [(0, 1), (1, 0)])


def test_tournament_size_limits() -> None:
    with pytest.raises(SizeOutOfRange):
        Tournament(0, ())
    with pytest.raises(SizeOutOfRange):
        transitive_tournament(65)


def test_transitive_tournament_has_no_backedges_in_order() -> None:
    t = transitive_tournament(6)
    assert t.scores() == (5, 4, 3, 2, 1, 0)
    assert backedge_graph(t, range(6)).edge_count == 0


def test_reversed_numbering_of_transitive_makes_everything_back() -> None:
    t = transitive_tournament(5)
    b = backedge_graph(t, reversed_numbering(range(5)))
    assert b.edge_count == 10


def test_ordered_graph_rejects_loops_and_duplicates() -> None:
    with pytest.raises(InvalidGraph):
        OrderedGraph.from_edges(3, [(1, 1)])
    with pytest.raises(InvalidGraph):
        OrderedGraph.from_edges(3, [(0, 1), (1, 0)])
    with pytest.raises(InvalidGraph):
        OrderedGraph(2, (0b10, 0))


def test_ordered_graph_components_are_sorted() -> None:
    g = OrderedGraph.from_one_based(6, [(1, 4), (2, 6), (4, 5)])
    assert g.components() == [(0, 3, 4), (1, 5), (2,)]


def test_induced_ordered_graph_compresses_positions() -> None:
    g = OrderedGraph.from_one_based(6, [(1, 6), (1, 4), (3, 6), (2, 5)])
    assert g.induced([0, 2, 3, 5]) == OrderedGraph.from_one_based(
        4, [(1, 3), (1, 4), (2, 4)]
    )


def test_check_numbering_mismatch() -> None:
    with pytest.raises(NumberingSizeMismatch):
        check_numbering(3, [0, 1])
    with pytest.raises(NumberingSizeMismatch):
        check_numbering(3, [0, 1, 1])


def test_walk_imbalance_counts_directions() -> None:
    g = OrderedGraph.from_one_based(4, [(1, 3), (2, 4), (1, 4)])
    assert walk_imbalance(g, [1, 3, 0, 2]) == 1
    assert walk_imbalance(g, [2, 0, 3, 1]) == -1
    assert walk_imbalance(g, [0]) == 0


def test_walk_imbalance_of_a_triangle_traversed_twice() -> None:
    triangle = OrderedGraph.from_one_based(3, [(1, 2), (2, 3), (1, 3)])
    assert walk_imbalance(triangle, [0, 1, 2, 0, 1, 2, 0]) == 2
    assert walk_imbalance(triangle, [0, 2, 1, 0, 2, 1, 0]) == -2


def test_walk_imbalance_rejects_non_walks() -> None:
    g = OrderedGraph.from_one_based(3, [(1, 2)])
    with pytest.raises(InvalidWalk):
        walk_imbalance(g, [])
    with pytest.raises(InvalidWalk):
        walk_imbalance(g, [0, 2])
    with pytest.raises(InvalidWalk):
        walk_imbalance(g, [0, 5])


@given(numbered_tournaments())
def test_backedges_rebuild_the_relabelled_tournament(
    case: tuple[Tournament, Numbering]
) -> None:
    t, numbering = case
    b = backedge_graph(t, numbering)
    assert tournament_from_backedges(b) == relabel(t, numbering)


@given(numbered_tournaments())
def test_reversed_numbering_complements_backedges(
    case: tuple[Tournament, Numbering]
) -> None:
    t, numbering = case
    b = backedge_graph(t, numbering)
    flipped = backedge_graph(t, reversed_numbering(numbering))
    assert flipped == reverse_order(complement(b))


@given(tournaments())
def test_reverse_swaps_scores(t: Tournament) -> None:
    assert reverse(reverse(t)) == t
    assert all(
        a + b == t.n - 1 for a, b in zip(t.scores(), reverse(t).scores())
    )


@given(ordered_graphs())
def test_reverse_order_is_an_involution(g: OrderedGraph) -> None:
    assert reverse_order(reverse_order(g)) == g
    assert complement(complement(g)) == g


@given(numbered_tournaments())
def test_inverse_undoes_numbering(case: tuple[Tournament, Numbering]) -> None:
    _, numbering = case
    position = inverse(numbering)
    assert all(numbering[position[v]] == v for v in range(len(numbering)))


@given(numbered_tournaments())
def test_reversing_the_tournament_complements_backedges(
    case: tuple[Tournament, Numbering]
) -> None:
    t, numbering = case
    assert complement(backedge_graph(t, numbering)) == backedge_graph(
        reverse(t), numbering
    )


@given(graph_walks())
def test_walk_imbalance_negates_on_reversal(
    case: tuple[OrderedGraph, list[int]]
) -> None:
    g, walk = case
    assert walk_imbalance(g, walk[::-1]) == -walk_imbalance(g, walk)


@given(graph_walks())
def test_walk_imbalance_adds_over_concatenation(
    case: tuple[OrderedGraph, list[int]]
) -> None:
    g, walk = case
    total = walk_imbalance(g, walk)
    for cut in range(len(walk)):
        head, tail = walk[: cut + 1], walk[cut:]
        assert walk_imbalance(g, head) + walk_imbalance(g, tail) == total
