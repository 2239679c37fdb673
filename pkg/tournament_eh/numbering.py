from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from enum import IntEnum, unique
from typing import Optional, Sequence

import networkx as nx

from .core import (
    Numbering,
    OrderedGraph,
    Tournament,
    backedge_graph,
    bits,
    check_numbering,
    full_mask,
    mask_of,
)
from .errors import TooLarge

logger = logging.getLogger(__name__)

MAX_OPTIMAL_VERTICES = 10
MAX_ALL_OPTIMAL_VERTICES = 8
MAX_FOREST_VERTICES = 8
MAX_BIPARTITION_VERTICES = 16


@dataclass(frozen=True)
class NumberingResult:
    numbering: Numbering
    backedge_count: int
    optimal: bool


@unique
class IntervalRule(IntEnum):
    # an end vertex has at most (j - i) / 2 backedge neighbours inside
    END_DEGREE = 1
    # intervals spanning at most three steps carry at most one backedge
    SHORT_INTERVAL = 2
    # intervals spanning four steps carry at most three, in one shape
    FOUR_STEP_INTERVAL = 3


@dataclass(frozen=True)
class IntervalViolation:
    rule: IntervalRule
    first: int
    last: int
    detail: str

    def __str__(self) -> str:
        return (
            f"rule {int(self.rule)} fails on v{self.first + 1}..v"
            f"{self.last + 1}: {self.detail}"
        )


def backedge_count(t: Tournament, numbering: Sequence[int]) -> int:
    return backedge_graph(t, numbering).edge_count


def _require_at_most(t: Tournament, limit: int, what: str) -> None:
    if t.n > limit:
        raise TooLarge(f"{what} needs at most {limit} vertices, got {t.n}")


def _search(
    t: Tournament, incumbent: int, *, keep_ties: bool
) -> tuple[int, list[Numbering]]:
    """Depth-first placement in lexicographic order.

    A vertex placed after others incurs one backedge per placed vertex it
    beats; every unplaced vertex will incur its wins over placed vertices
    too, which bounds each branch from below.
    """
    best = incumbent
    found: list[Numbering] = []
    placed: list[int] = []

    def extend(placed_mask: int, incurred: int) -> None:
        nonlocal best
        remaining = full_mask(t.n) & ~placed_mask
        bound = incurred + sum(
            (t.rows[vertex] & placed_mask).bit_count()
            for vertex in bits(remaining)
        )
        if bound > best or (bound == best and not keep_ties):
            return
        if not remaining:
            if incurred < best:
                best = incurred
                found.clear()
            found.append(tuple(placed))
            return
        for vertex in bits(remaining):
            placed.append(vertex)
            extend(
                placed_mask | 1 << vertex,
                incurred + (t.rows[vertex] & placed_mask).bit_count(),
            )
            placed.pop()

    extend(0, 0)
    return best, found


def min_backedge_numbering(t: Tournament) -> NumberingResult:
    """The lexicographically least numbering with fewest backedges."""
    _require_at_most(t, MAX_OPTIMAL_VERTICES, "exact minimum numbering")
    # every numbering has fewer than n * n backedges
    best, found = _search(t, t.n * t.n, keep_ties=False)
    logger.debug("minimum backedge count %d on %d vertices", best, t.n)
    return NumberingResult(found[-1], best, optimal=True)


def optimal_numberings(t: Tournament) -> list[Numbering]:
    """Every numbering attaining the minimum, in lexicographic order."""
    _require_at_most(t, MAX_ALL_OPTIMAL_VERTICES, "listing optima")
    minimum = min_backedge_numbering(t).backedge_count
    _, found = _search(t, minimum, keep_ties=True)
    return found


def interval_violations(
    t: Tournament, numbering: Sequence[int]
) -> list[IntervalViolation]:
    numbering = check_numbering(t.n, numbering)
    b = backedge_graph(t, numbering)
    violations: list[IntervalViolation] = []
    for i, j in itertools.combinations(range(t.n), 2):
        span = j - i
        inside = mask_of(range(i, j + 1))
        for end in (i, j):
            others = inside & ~(1 << end)
            count = (b.adj[end] & others).bit_count()
            if 2 * count > span:
                violations.append(
                    IntervalViolation(
                        IntervalRule.END_DEGREE,
                        i,
                        j,
                        f"v{end + 1} has {count} backedge neighbours",
                    )
                )
        edges = b.induced(range(i, j + 1)).edges
        if span <= 3 and len(edges) > 1:
            violations.append(
                IntervalViolation(
                    IntervalRule.SHORT_INTERVAL,
                    i,
                    j,
                    f"{len(edges)} backedges",
                )
            )
        if span == 4 and (
            len(edges) > 3
            or (len(edges) == 3 and set(edges) != {(0, 4), (0, 3), (1, 4)})
        ):
            violations.append(
                IntervalViolation(
                    IntervalRule.FOUR_STEP_INTERVAL,
                    i,
                    j,
                    f"backedges {[(p + i + 1, q + i + 1) for p, q in edges]}",
                )
            )
    return violations


def forest_numbering(t: Tournament) -> Optional[Numbering]:
    """The first numbering, lexicographically, with an acyclic backedge
    graph."""
    _require_at_most(t, MAX_FOREST_VERTICES, "forest numbering search")
    for numbering in itertools.permutations(range(t.n)):
        b = backedge_graph(t, numbering)
        if b.edge_count < t.n and nx.is_forest(b.to_networkx()):
            return numbering
    return None


def is_transitive_set(t: Tournament, vertices: int) -> bool:
    scores = [(t.rows[v] & vertices).bit_count() for v in bits(vertices)]
    return len(set(scores)) == len(scores)


def transitive_bipartition(
    t: Tournament,
) -> Optional[tuple[frozenset[int], frozenset[int]]]:
    """Two nonempty parts inducing transitive subtournaments.

    The part holding vertex 0 comes first; a single vertex yields
    ({0}, {}).
    """
    _require_at_most(t, MAX_BIPARTITION_VERTICES, "bipartition search")
    everyone = full_mask(t.n)
    if t.n == 1:
        return frozenset({0}), frozenset()
    for other in range(1, 1 << (t.n - 1)):
        second = other << 1
        first = everyone & ~second
        if is_transitive_set(t, first) and is_transitive_set(t, second):
            return frozenset(bits(first)), frozenset(bits(second))
    return None


def d5_backedge_pattern(
    b: OrderedGraph,
) -> Optional[tuple[int, int, int, int, int]]:
    """Positions a < b < c < d < e when the edges are exactly ad, ae, be."""
    edges = b.edges
    if len(edges) != 3:
        return None
    ends = sorted({position for edge in edges for position in edge})
    if len(ends) != 4:
        return None
    first, second, third, last = ends
    if set(edges) != {(first, third), (first, last), (second, last)}:
        return None
    if third - second < 2:
        return None
    return first, second, second + 1, third, last


def has_d5_backedge_pattern(b: OrderedGraph) -> bool:
    return d5_backedge_pattern(b) is not None
