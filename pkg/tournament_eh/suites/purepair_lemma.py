from __future__ import annotations

import math

import numpy as np

from ..catalog import D_5
from ..core import (
    Tournament,
    backedge_graph,
    bits,
    full_mask,
    transitive_tournament,
)
from ..sampling import random_numbering, random_tournament, substream
from ..search import (
    PurePair,
    backedge_to_pure,
    check_graph_pair,
    check_pure_pair,
    max_anticomplete_pair,
    max_pure_pair,
    pure_to_backedge,
)
from ..suite import Check, Outcome, SuiteOptions

ORACLE_SAMPLES = 200
TRANSLATION_SAMPLES = 1000


def _order(pair: PurePair | None) -> int:
    return 0 if pair is None else pair.order


def brute_force_order(t: Tournament) -> int:
    """Maximum over every set A of min(|A|, |vertices beaten by all of A|)."""
    best = 0
    for chosen in range(1, 1 << t.n):
        common = full_mask(t.n)
        for v in bits(chosen):
            common &= t.rows[v]
        best = max(best, min(chosen.bit_count(), common.bit_count()))
    return best


def d5_order(options: SuiteOptions) -> Outcome:
    order = _order(max_pure_pair(D_5))
    return Outcome.verdict(order == 1, {"order": order})


def transitive_orders(options: SuiteOptions) -> Outcome:
    orders = {
        2 * m: _order(max_pure_pair(transitive_tournament(2 * m)))
        for m in range(1, 11)
    }
    return Outcome.verdict(
        all(order == n // 2 for n, order in orders.items()), orders
    )


def oracle_agreement(options: SuiteOptions) -> Outcome:
    rng = substream(options.seed, "purepair/oracle")
    samples = options.sample_count(ORACLE_SAMPLES)
    for index in range(samples):
        t = random_tournament(int(rng.integers(2, 11)), rng)
        pair = max_pure_pair(t)
        if pair is not None:
            check_pure_pair(t, pair)
        expected = brute_force_order(t)
        if _order(pair) != expected:
            return Outcome.verdict(
                False,
                {
                    "sample": index,
                    "arcs": [[u + 1, v + 1] for u, v in t.arcs()],
                    "found": _order(pair),
                    "expected": expected,
                },
            )
    return Outcome.verdict(True, {"samples": samples})


def _translate_once(t: Tournament, rng: np.random.Generator) -> list[str]:
    problems: list[str] = []
    numbering = random_numbering(t.n, rng)
    b = backedge_graph(t, numbering)
    pair = max_pure_pair(t, exact=False)
    assert pair is not None
    translated = pure_to_backedge(t, numbering, pair)
    check_graph_pair(b, translated)
    if translated.order < math.ceil(pair.order / 2):
        problems.append(f"pure pair {pair.order} -> {translated.order}")
    inputs = [translated]
    if t.n <= 12 and (anticomplete := max_anticomplete_pair(b)) is not None:
        inputs.append(anticomplete)
    for graph_pair in inputs:
        back = backedge_to_pure(t, numbering, graph_pair)
        check_pure_pair(t, back)
        if back.order < math.ceil(graph_pair.order / 2):
            problems.append(
                f"{graph_pair.kind} pair {graph_pair.order} -> {back.order}"
            )
    return problems


def translation_halves(options: SuiteOptions) -> Outcome:
    rng = substream(options.seed, "purepair/translation")
    samples = options.sample_count(TRANSLATION_SAMPLES)
    for index in range(samples):
        t = random_tournament(int(rng.integers(2, 21)), rng)
        problems = _translate_once(t, rng)
        if problems:
            return Outcome.verdict(
                False, {"sample": index, "n": t.n, "problems": problems}
            )
    return Outcome.verdict(True, {"samples": samples})


def exported_checks() -> list[Check]:
    return [
        Check("purepair.d5", "D_5 has pure pairs of order 1 only", d5_order),
        Check(
            "purepair.transitive",
            "TT_2m has a pure pair of order m, for m up to 10",
            transitive_orders,
        ),
        Check(
            "purepair.oracle",
            "the exact pure pair search agrees with brute force on random"
            " tournaments with at most ten vertices",
            oracle_agreement,
        ),
        Check(
            "purepair.translation",
            "pure pairs and backedge pairs translate into each other at half"
            " their order or better",
            translation_halves,
        ),
    ]
