from __future__ import annotations

from ..catalog import CYCLIC_TRIANGLE, P_7
from ..core import bits, transitive_tournament
from ..enumeration import all_tournaments, is_isomorphic
from ..numbering import forest_numbering, transitive_bipartition
from ..search import contains_subtournament
from ..suite import Check, Outcome, SuiteOptions


def no_transitive_four(options: SuiteOptions) -> Outcome:
    copy = contains_subtournament(P_7, transitive_tournament(4))
    return Outcome.verdict(
        copy is None, None if copy is None else [v + 1 for v in copy]
    )


def cyclic_out_neighbourhoods(options: SuiteOptions) -> Outcome:
    acyclic = [
        v + 1
        for v in range(P_7.n)
        if not is_isomorphic(
            P_7.induced(list(bits(P_7.out_neighbours(v)))), CYCLIC_TRIANGLE
        )
    ]
    return Outcome.verdict(not acyclic, {"acyclic": acyclic})


def no_forest_numbering(options: SuiteOptions) -> Outcome:
    numbering = forest_numbering(P_7)
    return Outcome.verdict(
        numbering is None,
        None if numbering is None else [v + 1 for v in numbering],
    )


def no_transitive_bipartition(options: SuiteOptions) -> Outcome:
    parts = transitive_bipartition(P_7)
    return Outcome.verdict(
        parts is None,
        None if parts is None else [sorted(v + 1 for v in p) for p in parts],
    )


def forests_give_bipartitions(options: SuiteOptions) -> Outcome:
    with_forest = 0
    for n in range(1, 7):
        for t in all_tournaments(n, jobs=options.jobs):
            if forest_numbering(t) is None:
                continue
            with_forest += 1
            if transitive_bipartition(t) is None:
                return Outcome.verdict(
                    False, {"arcs": [[u + 1, v + 1] for u, v in t.arcs()]}
                )
    return Outcome.verdict(True, {"with_forest_numbering": with_forest})


def exported_checks() -> list[Check]:
    return [
        Check(
            "paley.no_tt4",
            "P_7 has no transitive subtournament on four vertices",
            no_transitive_four,
        ),
        Check(
            "paley.out_neighbourhoods",
            "every out-neighbourhood of P_7 is a cyclic triangle",
            cyclic_out_neighbourhoods,
        ),
        Check(
            "paley.no_forest",
            "no numbering of P_7 has a forest backedge graph",
            no_forest_numbering,
        ),
        Check(
            "paley.no_bipartition",
            "P_7 does not split into two transitive subtournaments",
            no_transitive_bipartition,
        ),
        Check(
            "paley.forest_chain",
            "every tournament on at most six vertices with a forest numbering"
            " splits into two transitive subtournaments",
            forests_give_bipartitions,
        ),
    ]
