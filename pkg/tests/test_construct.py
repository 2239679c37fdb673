import math
from fractions import Fraction

import networkx as nx
import pytest

from tournament_eh.blockade import Blockade
from tournament_eh.catalog import OBS_1
from tournament_eh.construct import (
    ConstructionParams,
    assemble_counterexample,
    b_length,
    build_counterexample,
    degree_threshold,
    forest_pure_pair,
    good_pairs,
    is_welcoming,
    obstruction_supports,
    sample_girth_graph,
    unbalanced_cycle,
    welcoming_closure,
    welcoming_paths,
)
from tournament_eh.core import OrderedGraph, tournament_from_backedges
from tournament_eh.errors import (
    InvalidParameters,
    InvalidWalk,
    RetryLimitExceeded,
    VerificationFailed,
    VertexNotInBlockade,
)
from tournament_eh.search import check_pure_pair

MONOTONE_PATH = OrderedGraph.from_one_based(4, [(1, 2), (2, 3), (3, 4)])


def test_degree_threshold_is_least() -> None:
    for c in (Fraction(1, 2), Fraction(1, 4), Fraction(1, 9)):
        scale = float(c) ** 2 / (8 * math.e)

        def holds(d: int) -> bool:
            return d * scale > 1 and d * math.log(d * scale) >= math.log(6)

        d = degree_threshold(c)
        assert holds(d) and not holds(d - 1)
    with pytest.raises(InvalidParameters):
        degree_threshold(Fraction(1))


def test_construction_params() -> None:
    params = ConstructionParams.of(2, "1/2", 8)
    assert params.n == 16
    assert params.c_prime == Fraction(1, 4)
    assert params.girth == 54
    assert params.edge_probability == 4
    assert params.sampling_probability == Fraction(1, 32)
    assert params.to_dict()["c_prime"] == "1/4"


@pytest.mark.parametrize(
    ("k", "c", "width"),
    [(0, "1/2", 4), (2, "1", 4), (2, "0", 4), (2, "1/2", 0), (1, "1/2", 1)],
)
def test_construction_params_validation(k: int, c: str, width: int) -> None:
    with pytest.raises(InvalidParameters):
        ConstructionParams.of(k, c, width)


def test_construction_params_reject_bad_fractions() -> None:
    with pytest.raises(InvalidParameters):
        ConstructionParams.of(2, "half", 4)


def test_b_lengths() -> None:
    blockade = Blockade.consecutive(7, 3, 2)
    assert b_length(blockade, 0, 1) == 0
    assert b_length(blockade, 1, 2) == 1
    assert b_length(blockade, 5, 0) == 2
    with pytest.raises(VertexNotInBlockade):
        b_length(blockade, 0, 6)


def test_welcoming_paths_of_the_four_vertex_obstruction() -> None:
    singletons = Blockade.singletons(4)
    assert is_welcoming(OBS_1, singletons, (1, 3, 0, 2))
    assert not is_welcoming(OBS_1, singletons, (2, 0, 3, 1))
    assert list(welcoming_paths(OBS_1, singletons)) == [(1, 3, 0, 2)]


def test_monotone_path_is_not_welcoming() -> None:
    assert not is_welcoming(
        MONOTONE_PATH, Blockade.singletons(4), (0, 1, 2, 3)
    )


def test_welcoming_rejects_non_paths() -> None:
    singletons = Blockade.singletons(4)
    with pytest.raises(InvalidWalk):
        is_welcoming(OBS_1, singletons, (1, 3, 0))
    with pytest.raises(InvalidWalk):
        is_welcoming(OBS_1, singletons, (0, 1, 2, 3))


def test_good_pairs() -> None:
    singletons = Blockade.singletons(4)
    assert good_pairs(OBS_1, singletons, 1) == {(1, 2)}
    assert good_pairs(OrderedGraph.edgeless(4), singletons, 1) == set()
    assert good_pairs(OBS_1, Blockade.consecutive(4, 1, 4), 0) == set()


def test_closure_adds_the_welcoming_pair() -> None:
    closure = welcoming_closure(OBS_1, Blockade.singletons(4))
    assert closure.added == {3: [], 2: [], 1: [(1, 2)]}
    assert closure.graph == OrderedGraph.from_edges(
        4, [*OBS_1.edges, (1, 2)]
    )
    assert closure.max_degrees[4] == 2


def test_closure_of_an_edgeless_graph_is_itself() -> None:
    edgeless = OrderedGraph.edgeless(6)
    closure = welcoming_closure(edgeless, Blockade.consecutive(6, 3, 2))
    assert closure.graph == edgeless
    assert all(not pairs for pairs in closure.added.values())


def test_unbalanced_cycles() -> None:
    triangle = OrderedGraph.from_one_based(3, [(1, 2), (2, 3), (1, 3)])
    assert unbalanced_cycle(triangle) is not None
    assert unbalanced_cycle(MONOTONE_PATH) is None


def test_dense_sample_is_accepted_by_the_anticomplete_test() -> None:
    sample = sample_girth_graph(20, Fraction(1, 4), 2, seed=0)
    assert sample.attempts == 1
    assert sample.degree_deletions == 0
    assert sample.graph.edge_count == 190
    assert sample.anticomplete_order == 0


def test_sparse_sample_has_large_girth_and_small_degrees() -> None:
    sample = sample_girth_graph(
        12,
        Fraction(1, 2),
        5,
        seed=1,
        edge_probability=Fraction(1, 24),
        degree_bound=3,
        require_anticomplete=False,
    )
    assert sample.graph.n == 12
    assert max(sample.degrees) < 3
    cycles = nx.simple_cycles(sample.graph.to_networkx(), length_bound=5)
    assert next(cycles, None) is None


def test_samples_are_reproducible() -> None:
    def draw(seed: int) -> OrderedGraph:
        return sample_girth_graph(
            10,
            Fraction(1, 2),
            4,
            seed=seed,
            edge_probability=Fraction(1, 10),
            require_anticomplete=False,
        ).graph

    assert draw(5) == draw(5)


def test_dense_girth_samples_run_out_of_retries() -> None:
    with pytest.raises(RetryLimitExceeded):
        sample_girth_graph(12, Fraction(1, 2), 5, seed=0, retries=2)
    with pytest.raises(InvalidParameters):
        sample_girth_graph(1, Fraction(1, 2), 5, seed=0)


def test_singleton_width_construction() -> None:
    result = assemble_counterexample(ConstructionParams.of(2, "1/2", 1))
    assert result.failed == ["d"]
    assert result.blockade == Blockade.singletons(2)
    assert {bullet.name for bullet in result.bullets} == set("abcdefgh")
    assert result.tournament.n == 2


def test_pure_pair_bullet_is_required_up_to_24_vertices() -> None:
    with pytest.raises(VerificationFailed) as info:
        build_counterexample(ConstructionParams.of(2, "1/2", 1))
    assert info.value.failed == ["d"]


def test_undecided_pure_pair_bullet_fails_only_when_strict() -> None:
    params = ConstructionParams.of(2, "1/2", 13)
    result = build_counterexample(params)
    (bullet,) = (b for b in result.bullets if b.name == "d")
    assert bullet.passed is None and not bullet.required
    with pytest.raises(VerificationFailed) as info:
        build_counterexample(params, strict=True)
    assert info.value.failed == ["d"]


def test_forest_pure_pair() -> None:
    pair = forest_pure_pair(MONOTONE_PATH)
    assert pair is not None and pair.order == 1
    check_pure_pair(tournament_from_backedges(MONOTONE_PATH), pair)
    triangle = OrderedGraph.from_one_based(3, [(1, 2), (2, 3), (1, 3)])
    assert forest_pure_pair(triangle) is None


def test_small_constructions_always_hold_a_large_pure_pair() -> None:
    result = assemble_counterexample(ConstructionParams.of(2, "1/2", 8))
    assert nx.is_forest(result.graph.to_networkx())
    assert "d" in result.failed
    pair = forest_pure_pair(result.graph)
    assert pair is not None and pair.order >= 4
    check_pure_pair(result.tournament, pair)


def test_obstruction_supports_brute_force() -> None:
    singletons = Blockade.singletons(4)
    assert obstruction_supports(OBS_1, singletons) == {1: [(0, 1, 2, 3)]}
    assert obstruction_supports(OBS_1, Blockade.consecutive(4, 2, 2)) == {}
