from __future__ import annotations

from fractions import Fraction
from functools import cache
from typing import Any, Optional

from ..blockade import Blockade
from ..catalog import OBS_1
from ..construct import (
    ConstructionParams,
    Counterexample,
    assemble_counterexample,
    forest_pure_pair,
    is_welcoming,
    obstruction_supports,
)
from ..errors import RetryLimitExceeded
from ..report import Status
from ..search import check_pure_pair
from ..suite import Check, Outcome, SuiteOptions

SEEDS_PER_POINT = 5
PURE_PAIR_BULLET = "d"


def _summary(result: Counterexample) -> dict[str, Any]:
    return {
        "edges": result.graph.edge_count,
        "sampled_edges": result.sample.graph.edge_count,
        "added": {str(i): len(p) for i, p in result.closure.added.items()},
        "bullets": {
            bullet.name: bullet.passed for bullet in result.bullets
        },
    }


@cache
def _runs(
    k: int, c: Fraction, width: int, options: SuiteOptions
) -> dict[int, Optional[Counterexample]]:
    """One construction per seed; None where sampling ran out of retries."""
    runs: dict[int, Optional[Counterexample]] = {}
    for offset in range(options.sample_count(SEEDS_PER_POINT)):
        seed = options.seed + offset
        params = ConstructionParams(k, c, width, seed)
        try:
            runs[seed] = assemble_counterexample(params, strict=options.strict)
        except RetryLimitExceeded:
            runs[seed] = None
    return runs


def _structural_point(
    k: int, c: Fraction, width: int, options: SuiteOptions
) -> Outcome:
    witness: dict[str, Any] = {}
    passing = 0
    for seed, result in _runs(k, c, width, options).items():
        if result is None:
            witness[str(seed)] = {"error": "RetryLimitExceeded"}
            continue
        failed = [b for b in result.failed if b != PURE_PAIR_BULLET]
        # brute force agrees with the rainbow search behind bullet (c)
        brute = obstruction_supports(result.graph, result.blockade)
        summary = _summary(result)
        summary["brute_force_obstructions"] = sum(map(len, brute.values()))
        witness[str(seed)] = summary
        if not failed and not brute:
            passing += 1
    return Outcome.verdict(
        passing >= 1,
        {"params": ConstructionParams(k, c, width).to_dict(), "runs": witness},
    )


def _pure_pair_point(
    k: int, c: Fraction, width: int, options: SuiteOptions
) -> Outcome:
    orders: dict[str, Any] = {}
    forced: list[int] = []
    for seed, result in _runs(k, c, width, options).items():
        if result is None:
            continue
        (bullet,) = (
            b for b in result.bullets if b.name == PURE_PAIR_BULLET
        )
        if bullet.passed:
            return Outcome.verdict(
                True, {"seed": seed, "detail": bullet.detail}
            )
        orders[str(seed)] = bullet.detail
        pair = forest_pure_pair(result.graph)
        if pair is not None and pair.order >= c * width:
            check_pure_pair(result.tournament, pair)
            forced.append(pair.order)
    if orders and len(forced) == len(orders):
        return Outcome(
            Status.SKIPPED,
            {
                "reason": (
                    f"J is a forest at n={k * width}, so G has a pure pair of"
                    f" order at least {min(forced)} >= cW={c * width}"
                ),
                "runs": orders,
            },
        )
    return Outcome.verdict(False, {"runs": orders})


def two_blocks(options: SuiteOptions) -> Outcome:
    return _structural_point(2, Fraction(1, 2), 8, options)


def two_blocks_pure_pair(options: SuiteOptions) -> Outcome:
    return _pure_pair_point(2, Fraction(1, 2), 8, options)


def three_blocks(options: SuiteOptions) -> Outcome:
    return _structural_point(3, Fraction(1, 3), 6, options)


def three_blocks_pure_pair(options: SuiteOptions) -> Outcome:
    return _pure_pair_point(3, Fraction(1, 3), 6, options)


def welcoming_example(options: SuiteOptions) -> Outcome:
    singletons = Blockade.singletons(4)
    forward = is_welcoming(OBS_1, singletons, (1, 3, 0, 2))
    backward = is_welcoming(OBS_1, singletons, (2, 0, 3, 1))
    return Outcome.verdict(
        forward and not backward, {"forward": forward, "backward": backward}
    )


def exported_checks() -> list[Check]:
    return [
        Check(
            "construction.k2",
            "k=2, c=1/2, W=8 yields a construction meeting every bullet"
            " but the pure-pair bound",
            two_blocks,
        ),
        Check(
            "construction.k2.pure_pair",
            "k=2, c=1/2, W=8 yields G with no pure pair of order at least cW",
            two_blocks_pure_pair,
        ),
        Check(
            "construction.k3",
            "k=3, c=1/3, W=6 yields a construction meeting every bullet"
            " but the pure-pair bound",
            three_blocks,
        ),
        Check(
            "construction.k3.pure_pair",
            "k=3, c=1/3, W=6 yields G with no pure pair of order at least cW",
            three_blocks_pure_pair,
        ),
        Check(
            "construction.welcoming",
            "the four-vertex obstruction is a welcoming path from its second"
            " to its third vertex",
            welcoming_example,
        ),
    ]
