from __future__ import annotations

from ..catalog import DRAWN_D5_DENSE
from ..core import identity_numbering, tournament_from_backedges
from ..enumeration import all_tournaments
from ..numbering import IntervalRule, interval_violations, optimal_numberings
from ..suite import Check, Outcome, SuiteOptions


def optimal_numberings_obey_intervals(options: SuiteOptions) -> Outcome:
    examined = 0
    for n in range(1, 7):
        for t in all_tournaments(n, jobs=options.jobs):
            for numbering in optimal_numberings(t):
                examined += 1
                violations = interval_violations(t, numbering)
                if violations:
                    return Outcome.verdict(
                        False,
                        {
                            "arcs": [[u + 1, v + 1] for u, v in t.arcs()],
                            "numbering": [v + 1 for v in numbering],
                            "violations": [str(x) for x in violations],
                        },
                    )
    return Outcome.verdict(True, {"numberings": examined})


def dense_d5_drawing_is_flagged(options: SuiteOptions) -> Outcome:
    t = tournament_from_backedges(DRAWN_D5_DENSE)
    violations = interval_violations(t, identity_numbering(t.n))
    return Outcome.verdict(
        any(x.rule is IntervalRule.SHORT_INTERVAL for x in violations),
        [str(x) for x in violations],
    )


def exported_checks() -> list[Check]:
    return [
        Check(
            "interval.optimal",
            "every optimal numbering of a tournament on at most six vertices"
            " obeys the three interval rules",
            optimal_numberings_obey_intervals,
        ),
        Check(
            "interval.dense_d5",
            "the four-backedge drawing of D_5 breaks the short-interval rule",
            dense_d5_drawing_is_flagged,
        ),
    ]
