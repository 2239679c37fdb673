from __future__ import annotations

from ..catalog import D_5, F_6, H_6, H_6_BAR, P_7_MINUS
from ..enumeration import all_tournaments, canonical_form
from ..numbering import min_backedge_numbering
from ..suite import Check, Outcome, SuiteOptions

CLASS_COUNTS = {1: 1, 2: 1, 3: 2, 4: 4, 5: 12, 6: 56}
EXCEPTIONAL_SIX = {
    "P_7_minus": P_7_MINUS,
    "H_6": H_6,
    "H_6_bar": H_6_BAR,
    "F_6": F_6,
}


def class_counts(options: SuiteOptions) -> Outcome:
    found = {
        n: len(all_tournaments(n, jobs=options.jobs)) for n in CLASS_COUNTS
    }
    return Outcome.verdict(found == CLASS_COUNTS, found)


def _maximum(n: int, options: SuiteOptions) -> tuple[int, list[int]]:
    """The largest minimum backedge count and the canonical codes reaching
    it."""
    counts = [
        (min_backedge_numbering(t).backedge_count, canonical_form(t).code)
        for t in all_tournaments(n, jobs=options.jobs)
    ]
    worst = max(count for count, _ in counts)
    return worst, sorted(code for count, code in counts if count == worst)


def at_most_one_below_five(options: SuiteOptions) -> Outcome:
    worst = {n: _maximum(n, options)[0] for n in range(1, 5)}
    return Outcome.verdict(all(w <= 1 for w in worst.values()), worst)


def five_vertices(options: SuiteOptions) -> Outcome:
    worst, codes = _maximum(5, options)
    return Outcome.verdict(
        worst == 3 and codes == [canonical_form(D_5).code],
        {"maximum": worst, "classes": len(codes)},
    )


def six_vertices(options: SuiteOptions) -> Outcome:
    worst, codes = _maximum(6, options)
    expected = {
        canonical_form(t).code: name for name, t in EXCEPTIONAL_SIX.items()
    }
    return Outcome.verdict(
        worst == 4 and sorted(expected) == codes,
        {
            "maximum": worst,
            "classes": [expected.get(code, f"code {code}") for code in codes],
            # the statement names C_7^-, the case analysis ends at P_7^-
            "label": "P_7_minus",
        },
    )


def exported_checks() -> list[Check]:
    return [
        Check(
            "classification.counts",
            "there are 1, 1, 2, 4, 12 and 56 tournaments on 1 to 6 vertices",
            class_counts,
        ),
        Check(
            "classification.small",
            "tournaments on at most four vertices need at most one backedge",
            at_most_one_below_five,
        ),
        Check(
            "classification.five",
            "five-vertex tournaments need at most three backedges, and only"
            " D_5 needs three",
            five_vertices,
        ),
        Check(
            "classification.six",
            "six-vertex tournaments need at most four backedges, exactly"
            " P_7^-, H_6, its reverse and F_6 needing four",
            six_vertices,
        ),
    ]
