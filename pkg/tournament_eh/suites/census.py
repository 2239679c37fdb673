from __future__ import annotations

import itertools

from ..catalog import D_5, P_7_MINUS, check_drawings
from ..core import OrderedGraph, reverse, tournament_from_backedges
from ..enumeration import backedge_census, is_isomorphic
from ..numbering import d5_backedge_pattern, has_d5_backedge_pattern
from ..search import contains_subtournament
from ..suite import Check, Outcome, SuiteOptions


def d5_census_size(options: SuiteOptions) -> Outcome:
    size = len(backedge_census(D_5))
    return Outcome.verdict(size == 24, {"size": size})


def p7_minus_census_size(options: SuiteOptions) -> Outcome:
    size = len(backedge_census(P_7_MINUS))
    return Outcome.verdict(size == 240, {"size": size})


def d5_unique_sparse_graph(options: SuiteOptions) -> Outcome:
    sparse = [b for b in backedge_census(D_5) if b.edge_count == 3]
    patterns = [d5_backedge_pattern(b) for b in sparse]
    return Outcome.verdict(
        len(sparse) == 1 and patterns[0] is not None,
        {
            "graphs": [b.one_based_edges() for b in sparse],
            "positions": [
                None if p is None else [x + 1 for x in p] for p in patterns
            ],
        },
    )


def drawings_agree(options: SuiteOptions) -> Outcome:
    check_drawings()
    return Outcome.verdict(True)


def census_round_trip(options: SuiteOptions) -> Outcome:
    for source in (D_5, P_7_MINUS):
        for b in backedge_census(source):
            if not is_isomorphic(tournament_from_backedges(b), source):
                return Outcome.verdict(False, {"graph": b.one_based_edges()})
    return Outcome.verdict(True)


def d5_self_converse(options: SuiteOptions) -> Outcome:
    return Outcome.verdict(is_isomorphic(reverse(D_5), D_5))


def d5_pattern_equivalence(options: SuiteOptions) -> Outcome:
    examined = 0
    for n in range(3, 7):
        pairs = list(itertools.combinations(range(n), 2))
        for edges in itertools.combinations(pairs, 3):
            b = OrderedGraph.from_edges(n, edges)
            found = contains_subtournament(tournament_from_backedges(b), D_5)
            examined += 1
            if has_d5_backedge_pattern(b) != (found is not None):
                return Outcome.verdict(
                    False, {"n": n, "graph": b.one_based_edges()}
                )
    return Outcome.verdict(True, {"examined": examined})


def exported_checks() -> list[Check]:
    return [
        Check(
            "census.d5_size",
            "D_5 has exactly 24 backedge graphs",
            d5_census_size,
        ),
        Check(
            "census.p7_minus_size",
            "P_7^- has exactly 240 backedge graphs",
            p7_minus_census_size,
        ),
        Check(
            "census.d5_sparse",
            "exactly one backedge graph of D_5 has three edges, ad ae be",
            d5_unique_sparse_graph,
        ),
        Check(
            "census.drawings",
            "every drawn backedge graph agrees with its formula",
            drawings_agree,
        ),
        Check(
            "census.round_trip",
            "every census member rebuilds a tournament isomorphic to its"
            " source",
            census_round_trip,
        ),
        Check(
            "census.d5_self_converse",
            "reversing D_5 gives D_5 again",
            d5_self_converse,
        ),
        Check(
            "census.d5_pattern",
            "a three-edge backedge graph has the ad ae be shape iff its"
            " tournament contains D_5",
            d5_pattern_equivalence,
        ),
    ]
