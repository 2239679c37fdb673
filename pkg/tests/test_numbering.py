import itertools

import pytest
from hypothesis import given, settings

from tests.strategies import tournaments
from tournament_eh.catalog import (
    D_5,
    DRAWN_D5_DENSE,
    DRAWN_D5_SPARSE,
    F_6,
    P_7,
    P_7_MINUS,
)
from tournament_eh.core import (
    OrderedGraph,
    Tournament,
    identity_numbering,
    tournament_from_backedges,
    transitive_tournament,
)
from tournament_eh.errors import TooLarge
from tournament_eh.numbering import (
    IntervalRule,
    backedge_count,
    d5_backedge_pattern,
    forest_numbering,
    has_d5_backedge_pattern,
    interval_violations,
    is_transitive_set,
    min_backedge_numbering,
    optimal_numberings,
    transitive_bipartition,
)


def test_minimum_backedges_of_named_tournaments() -> None:
    assert min_backedge_numbering(D_5).backedge_count == 3
    assert min_backedge_numbering(P_7_MINUS).backedge_count == 4
    assert min_backedge_numbering(F_6).backedge_count == 4
    assert min_backedge_numbering(transitive_tournament(7)).numbering == (
        tuple(range(7))
    )


def test_minimum_is_lexicographically_least() -> None:
    t = D_5
    result = min_backedge_numbering(t)
    best = min(
        (backedge_count(t, p), p) for p in itertools.permutations(range(5))
    )
    assert (result.backedge_count, result.numbering) == best
    assert result.optimal


def test_optimal_numberings_are_all_minima() -> None:
    minimum = min_backedge_numbering(D_5).backedge_count
    expected = [
        p
        for p in itertools.permutations(range(5))
        if backedge_count(D_5, p) == minimum
    ]
    assert optimal_numberings(D_5) == expected


def test_optimal_search_limit() -> None:
    with pytest.raises(TooLarge):
        min_backedge_numbering(transitive_tournament(11))


def test_sparse_d5_drawing_is_optimal_and_clean() -> None:
    t = tournament_from_backedges(DRAWN_D5_SPARSE)
    assert interval_violations(t, identity_numbering(5)) == []


def test_dense_d5_drawing_breaks_short_intervals() -> None:
    t = tournament_from_backedges(DRAWN_D5_DENSE)
    violations = interval_violations(t, identity_numbering(5))
    assert violations
    assert IntervalRule.SHORT_INTERVAL in {v.rule for v in violations}
    assert "v1..v4" in " ".join(str(v) for v in violations)


def test_transitive_reversal_breaks_end_degrees() -> None:
    t = transitive_tournament(3)
    violations = interval_violations(t, (2, 1, 0))
    assert IntervalRule.END_DEGREE in {v.rule for v in violations}


def test_forest_numberings() -> None:
    assert forest_numbering(P_7) is None
    assert forest_numbering(D_5) is not None
    assert forest_numbering(transitive_tournament(5)) == tuple(range(5))


def test_transitive_bipartitions() -> None:
    assert transitive_bipartition(P_7) is None
    assert transitive_bipartition(transitive_tournament(1)) == (
        frozenset({0}),
        frozenset(),
    )
    first, second = transitive_bipartition(D_5) or (frozenset(), frozenset())
    assert 0 in first and second
    assert first | second == frozenset(range(5))


def test_is_transitive_set() -> None:
    assert is_transitive_set(transitive_tournament(4), 0b1111)
    assert not is_transitive_set(D_5, 0b11111)


def test_d5_backedge_pattern() -> None:
    assert d5_backedge_pattern(DRAWN_D5_SPARSE) == (0, 1, 2, 3, 4)
    assert not has_d5_backedge_pattern(DRAWN_D5_DENSE)
    # b and d must be separated for c to fit between them
    tight = OrderedGraph.from_one_based(5, [(1, 3), (1, 4), (2, 4)])
    assert d5_backedge_pattern(tight) is None


@settings(max_examples=40, deadline=None)
@given(tournaments(max_vertices=7))
def test_minimum_matches_brute_force(t: Tournament) -> None:
    best = min(
        backedge_count(t, p) for p in itertools.permutations(range(t.n))
    )
    assert min_backedge_numbering(t).backedge_count == best


@settings(max_examples=30, deadline=None)
@given(tournaments(max_vertices=6))
def test_optimal_numberings_obey_intervals(t: Tournament) -> None:
    for numbering in optimal_numberings(t):
        assert interval_violations(t, numbering) == []
