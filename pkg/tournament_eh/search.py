from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from enum import StrEnum, unique
from typing import Iterable, Optional, Sequence

import networkx as nx

from .core import (
    OrderedGraph,
    Tournament,
    backedge_graph,
    bits,
    check_numbering,
    full_mask,
    inverse,
    mask_of,
)
from .errors import NotAPurePair, TooLarge

logger = logging.getLogger(__name__)

MAX_EXACT_PAIR_VERTICES = 24

# host vertex per pattern vertex
Embedding = tuple[int, ...]


@unique
class PairKind(StrEnum):
    DIRECTED = "directed"
    ANTICOMPLETE = "anticomplete"
    COMPLETE = "complete"


@dataclass(frozen=True)
class PurePair:
    """Disjoint nonempty sets; for DIRECTED pairs every member of a beats
    every member of b."""

    a: frozenset[int]
    b: frozenset[int]
    kind: PairKind
    exact: bool = True

    @property
    def order(self) -> int:
        return min(len(self.a), len(self.b))


def _rainbow_ok(
    candidate: int, block_of: Optional[Sequence[int]], used_blocks: set[int]
) -> bool:
    if block_of is None:
        return True
    block = block_of[candidate]
    return block >= 0 and block not in used_blocks


def embed_tournament(
    host: Tournament,
    pattern: Tournament,
    *,
    block_of: Optional[Sequence[int]] = None,
    allowed: Optional[int] = None,
) -> Optional[Embedding]:
    """An isomorphic copy of pattern inside host.

    With block_of, the copy takes at most one vertex from each block and
    only vertices whose block index is nonnegative.
    """
    if pattern.n > host.n:
        return None
    usable = full_mask(host.n) if allowed is None else allowed
    # most constrained pattern vertices first
    order = sorted(
        range(pattern.n),
        key=lambda x: -abs(2 * pattern.out_degree(x) - (pattern.n - 1)),
    )
    image = [-1] * pattern.n
    used_blocks: set[int] = set()

    def place(depth: int, used: int) -> bool:
        if depth == pattern.n:
            return True
        x = order[depth]
        candidates = usable & ~used
        for y in order[:depth]:
            if pattern.beats(x, y):
                candidates &= host.in_neighbours(image[y])
            else:
                candidates &= host.rows[image[y]]
        wins = pattern.out_degree(x)
        losses = pattern.n - 1 - wins
        for candidate in bits(candidates):
            if (
                host.out_degree(candidate) < wins
                or host.n - 1 - host.out_degree(candidate) < losses
                or not _rainbow_ok(candidate, block_of, used_blocks)
            ):
                continue
            image[x] = candidate
            if block_of is not None:
                used_blocks.add(block_of[candidate])
            if place(depth + 1, used | 1 << candidate):
                return True
            if block_of is not None:
                used_blocks.discard(block_of[candidate])
        return False

    if place(0, 0):
        return tuple(image)
    return None


def embed_ordered(
    host: OrderedGraph,
    pattern: OrderedGraph,
    *,
    block_of: Optional[Sequence[int]] = None,
    allowed: Optional[int] = None,
) -> Optional[Embedding]:
    """An order-preserving induced copy of pattern inside host."""
    if pattern.n > host.n:
        return None
    usable = full_mask(host.n) if allowed is None else allowed
    image = [-1] * pattern.n
    used_blocks: set[int] = set()

    def place(x: int) -> bool:
        if x == pattern.n:
            return True
        later = full_mask(host.n) & ~full_mask(image[x - 1] + 1) if x else -1
        room = full_mask(host.n - (pattern.n - 1 - x))
        candidates = usable & later & room
        for y in range(x):
            if pattern.adjacent(x, y):
                candidates &= host.adj[image[y]]
            else:
                candidates &= ~host.adj[image[y]]
        for candidate in bits(candidates):
            if host.degree(candidate) < pattern.degree(x) or not _rainbow_ok(
                candidate, block_of, used_blocks
            ):
                continue
            image[x] = candidate
            if block_of is not None:
                used_blocks.add(block_of[candidate])
            if place(x + 1):
                return True
            if block_of is not None:
                used_blocks.discard(block_of[candidate])
        return False

    if place(0):
        return tuple(image)
    return None


def contains_subtournament(
    g: Tournament, h: Tournament
) -> Optional[Embedding]:
    return embed_tournament(g, h)


def contains_ordered(g: OrderedGraph, h: OrderedGraph) -> Optional[Embedding]:
    return embed_ordered(g, h)


def _greedy_pure_pair(g: Tournament) -> tuple[int, int]:
    best_value, best = 0, (0, 0)
    for start in range(g.n):
        chosen, common = 1 << start, g.rows[start]
        while True:
            value = min(chosen.bit_count(), common.bit_count())
            if value > best_value:
                best_value, best = value, (chosen, common)
            options = [
                (min(value + 1, (common & g.rows[v]).bit_count()), -v)
                for v in range(g.n)
                if not chosen >> v & 1
            ]
            gain, negated = max(options, default=(0, 0))
            if gain <= value:
                break
            chosen |= 1 << -negated
            common &= g.rows[-negated]
    return best


def max_pure_pair(
    g: Tournament, *, exact: Optional[bool] = None
) -> Optional[PurePair]:
    """A pure pair of maximum order, None below two vertices.

    exact=None searches exactly up to MAX_EXACT_PAIR_VERTICES vertices and
    greedily beyond; exact=True refuses larger tournaments.
    """
    if g.n < 2:
        return None
    if exact is None:
        exact = g.n <= MAX_EXACT_PAIR_VERTICES
    if not exact:
        a, b = _greedy_pure_pair(g)
        return PurePair(
            frozenset(bits(a)), frozenset(bits(b)), PairKind.DIRECTED, False
        )
    if g.n > MAX_EXACT_PAIR_VERTICES:
        raise TooLarge(
            f"exact pure pairs need at most {MAX_EXACT_PAIR_VERTICES}"
            f" vertices, got {g.n}"
        )
    order = sorted(range(g.n), key=lambda v: (-g.out_degree(v), v))
    best_value = 0
    best: tuple[int, int] = (0, 0)

    def grow(chosen: int, common: int, candidates: list[int]) -> None:
        nonlocal best_value, best
        size = chosen.bit_count()
        value = min(size, common.bit_count())
        if value > best_value:
            best_value, best = value, (chosen, common)
        if min(size + len(candidates), common.bit_count()) <= best_value:
            return
        for index, v in enumerate(candidates):
            narrowed = common & g.rows[v]
            if narrowed.bit_count() <= best_value:
                continue
            rest = [
                w
                for w in candidates[index + 1 :]
                if (narrowed & g.rows[w]).bit_count() > best_value
            ]
            grow(chosen | 1 << v, narrowed, rest)

    grow(0, full_mask(g.n), order)
    logger.debug("pure pair of order %d on %d vertices", best_value, g.n)
    return PurePair(
        frozenset(bits(best[0])), frozenset(bits(best[1])), PairKind.DIRECTED
    )


def max_anticomplete_pair(b: OrderedGraph) -> Optional[PurePair]:
    """Maximum-order disjoint sets with no edges between them; None when
    no such pair exists."""
    if b.n > MAX_EXACT_PAIR_VERTICES:
        raise TooLarge(
            f"exact anticomplete pairs need at most"
            f" {MAX_EXACT_PAIR_VERTICES} vertices, got {b.n}"
        )
    order = sorted(range(b.n), key=lambda v: (b.degree(v), v))
    best_value = 0
    best: tuple[int, int] = (0, 0)

    def grow(chosen: int, rest: int, candidates: list[int]) -> None:
        nonlocal best_value, best
        size = chosen.bit_count()
        value = min(size, rest.bit_count())
        if value > best_value:
            best_value, best = value, (chosen, rest)
        if min(size + len(candidates), rest.bit_count()) <= best_value:
            return
        for index, v in enumerate(candidates):
            narrowed = rest & ~(1 << v) & ~b.adj[v]
            if narrowed.bit_count() <= best_value:
                continue
            remaining = [
                w
                for w in candidates[index + 1 :]
                if (narrowed & ~(1 << w) & ~b.adj[w]).bit_count() > best_value
            ]
            grow(chosen | 1 << v, narrowed, remaining)

    grow(0, full_mask(b.n), order)
    if best_value == 0:
        return None
    return PurePair(
        frozenset(bits(best[0])),
        frozenset(bits(best[1])),
        PairKind.ANTICOMPLETE,
    )


def check_pure_pair(g: Tournament, pair: PurePair) -> None:
    if pair.kind is not PairKind.DIRECTED:
        raise NotAPurePair(f"a tournament pair must be directed: {pair.kind}")
    _check_sets(g.n, pair)
    for u in pair.a:
        if mask_of(pair.b) & ~g.rows[u]:
            raise NotAPurePair(f"vertex {u + 1} misses part of the other set")


def check_graph_pair(b: OrderedGraph, pair: PurePair) -> None:
    if pair.kind is PairKind.DIRECTED:
        raise NotAPurePair("a graph pair is anticomplete or complete")
    _check_sets(b.n, pair)
    other = mask_of(pair.b)
    for u in pair.a:
        joined = b.adj[u] & other
        if pair.kind is PairKind.ANTICOMPLETE and joined:
            raise NotAPurePair(f"position {u + 1} has an edge across")
        if pair.kind is PairKind.COMPLETE and joined != other:
            raise NotAPurePair(f"position {u + 1} misses an edge across")


def _check_sets(n: int, pair: PurePair) -> None:
    if not pair.a or not pair.b:
        raise NotAPurePair("both sides of a pure pair must be nonempty")
    if pair.a & pair.b:
        raise NotAPurePair(f"sides overlap in {sorted(pair.a & pair.b)}")
    if any(not 0 <= v < n for v in pair.a | pair.b):
        raise NotAPurePair(f"pair leaves the vertex range 1..{n}")


def _prefix_split(
    first: frozenset[int], second: frozenset[int]
) -> tuple[bool, frozenset[int], frozenset[int]]:
    """Walks positions in order until one side has half the order early.

    Returns whether the first side got there, the early part of the side
    that got there and the late part of the other side.
    """
    t = min(len(first), len(second))
    early_first: set[int] = set()
    early_second: set[int] = set()
    for position in sorted(first | second):
        if position in first:
            early_first.add(position)
        else:
            early_second.add(position)
        if 2 * len(early_first) >= t:
            return True, frozenset(early_first), second - early_second
        if 2 * len(early_second) >= t:
            return False, frozenset(early_second), first - early_first
    raise NotAPurePair("a pure pair needs two nonempty sides")


def pure_to_backedge(
    t: Tournament, numbering: Sequence[int], pair: PurePair
) -> PurePair:
    """A pair of order at least half in the backedge graph, on positions."""
    numbering = check_numbering(t.n, numbering)
    check_pure_pair(t, pair)
    position_of = inverse(numbering)
    winners = frozenset(position_of[v] for v in pair.a)
    losers = frozenset(position_of[v] for v in pair.b)
    winners_first, early, late = _prefix_split(winners, losers)
    if winners_first:
        # early winners beat late losers, so no backedges between them
        return PurePair(early, late, PairKind.ANTICOMPLETE)
    return PurePair(early, late, PairKind.COMPLETE)


def backedge_to_pure(
    t: Tournament, numbering: Sequence[int], pair: PurePair
) -> PurePair:
    """A directed pair of order at least half in t, on vertices."""
    numbering = check_numbering(t.n, numbering)
    check_graph_pair(backedge_graph(t, numbering), pair)
    _, early, late = _prefix_split(pair.a, pair.b)
    if pair.kind is PairKind.ANTICOMPLETE:
        winners, losers = early, late
    else:
        winners, losers = late, early
    return PurePair(
        frozenset(numbering[p] for p in winners),
        frozenset(numbering[p] for p in losers),
        PairKind.DIRECTED,
    )


def is_out_simplicial(digraph: nx.DiGraph | Iterable[tuple[int, int]]) -> bool:
    """Every two out-neighbours of a vertex are joined by an arc."""
    if not isinstance(digraph, nx.DiGraph):
        digraph = nx.DiGraph(list(digraph))
    for v in digraph.nodes:
        heads = [x for x in digraph.successors(v) if x != v]
        for x, y in itertools.combinations(heads, 2):
            if not digraph.has_edge(x, y) and not digraph.has_edge(y, x):
                return False
    return True
