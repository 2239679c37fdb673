from __future__ import annotations

from typing import Any, Optional

from ..catalog import D_5, DRAWN_P7_MINUS, OBS_1, OBSTRUCTIONS, P_7_MINUS
from ..construct import unbalanced_cycle
from ..core import OrderedGraph, reverse_order
from ..enumeration import backedge_census
from ..search import contains_ordered
from ..suite import Check, Outcome, SuiteOptions


def _reason(b: OrderedGraph) -> Optional[dict[str, Any]]:
    cycle = unbalanced_cycle(b, 5)
    if cycle is not None:
        return {"cycle": [p + 1 for p in cycle]}
    for index, obstruction in enumerate(OBSTRUCTIONS, start=1):
        copy = contains_ordered(b, obstruction)
        if copy is not None:
            return {"obstruction": index, "at": [p + 1 for p in copy]}
    return None


def census_covered(options: SuiteOptions) -> Outcome:
    counts = {"cycle": 0, "obstruction": 0}
    for source in (D_5, P_7_MINUS):
        for b in sorted(backedge_census(source), key=lambda x: x.adj):
            reason = _reason(b)
            if reason is None:
                return Outcome.verdict(False, {"graph": b.one_based_edges()})
            counts["cycle" if "cycle" in reason else "obstruction"] += 1
    return Outcome.verdict(sum(counts.values()) == 264, counts)


def mirrored_obstructions(options: SuiteOptions) -> Outcome:
    mirrored = [reverse_order(obstruction) for obstruction in OBSTRUCTIONS]
    return Outcome.verdict(all(m in OBSTRUCTIONS for m in mirrored))


def drawn_p7_minus_holds_first(options: SuiteOptions) -> Outcome:
    copy = contains_ordered(DRAWN_P7_MINUS, OBS_1)
    return Outcome.verdict(
        copy is not None,
        None if copy is None else {"at": [p + 1 for p in copy]},
    )


def exported_checks() -> list[Check]:
    return [
        Check(
            "obstructions.coverage",
            "all 264 backedge graphs of D_5 and P_7^- hold an unbalanced"
            " cycle of length at most five or an obstruction",
            census_covered,
        ),
        Check(
            "obstructions.mirrored",
            "reversing the order maps the obstructions onto themselves",
            mirrored_obstructions,
        ),
        Check(
            "obstructions.drawn_p7_minus",
            "the drawn P_7^- backedge graph holds the four-vertex"
            " obstruction",
            drawn_p7_minus_holds_first,
        ),
    ]
