from __future__ import annotations

from typing import Any

from ..catalog import D_5, F_6, H_6
from ..core import Tournament
from ..enumeration import all_tournaments
from ..numbering import min_backedge_numbering
from ..patterns import (
    Certificate,
    certificate_problems,
    find_srseh_certificate,
)
from ..search import contains_subtournament
from ..suite import Check, Outcome, SuiteOptions


def describe(certificate: Certificate) -> dict[str, Any]:
    return {
        "numberings": [
            [v + 1 for v in numbering] for numbering in certificate.numberings
        ],
        "templates": sorted(
            {str(template) for template in certificate.assignment.values()}
        ),
        "transversals": len(certificate.assignment),
    }


def _arcs(t: Tournament) -> list[list[int]]:
    return [[u + 1, v + 1] for u, v in t.arcs()]


def d5_free_sparse(options: SuiteOptions) -> Outcome:
    certified = 0
    for n in range(1, 7):
        for t in all_tournaments(n, jobs=options.jobs):
            if contains_subtournament(t, D_5) is not None:
                continue
            if min_backedge_numbering(t).backedge_count > 3:
                continue
            certificate = find_srseh_certificate(t, budget=options.budget)
            if certificate is None:
                return Outcome.verdict(False, {"uncertified": _arcs(t)})
            problems = certificate_problems(t, certificate)
            if problems:
                return Outcome.verdict(
                    False, {"arcs": _arcs(t), "problems": problems}
                )
            certified += 1
    return Outcome.verdict(True, {"certified": certified})


def f6_certified(options: SuiteOptions) -> Outcome:
    certificate = find_srseh_certificate(F_6, budget=options.budget)
    if certificate is None:
        return Outcome.verdict(False, {"reason": "search found none"})
    problems = certificate_problems(F_6, certificate)
    return Outcome.verdict(
        not problems, {**describe(certificate), "problems": problems}
    )


def h6_has_no_certificate(options: SuiteOptions) -> Outcome:
    certificate = find_srseh_certificate(H_6, budget=options.budget)
    if certificate is None:
        return Outcome.verdict(True, {"found": False})
    problems = certificate_problems(H_6, certificate)
    return Outcome.verdict(
        False,
        {"found": True, **describe(certificate), "problems": problems},
    )


def exported_checks() -> list[Check]:
    return [
        Check(
            "certificates.d5_free",
            "every D_5-free tournament on at most six vertices with at most"
            " three backedges has a certificate that re-verifies",
            d5_free_sparse,
        ),
        Check(
            "certificates.f6",
            "F_6 has a certificate that re-verifies",
            f6_certified,
        ),
        Check(
            "certificates.h6",
            "the complete certificate search finds nothing for H_6",
            h6_has_no_certificate,
        ),
    ]
