from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

import networkx as nx

from .errors import (
    AsymmetryViolation,
    InvalidGraph,
    InvalidWalk,
    NumberingSizeMismatch,
    ReflexivePair,
    SizeOutOfRange,
)

MAX_VERTICES = 64  # adjacency rows fit one machine word

# perm[p] is the vertex placed at position p
Numbering = tuple[int, ...]
# a sequence of positions p_0..p_r of an ordered graph
Walk = tuple[int, ...]


def bits(mask: int) -> Iterator[int]:
    """Yields the set bit indices of mask, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for vertex in vertices:
        mask |= 1 << vertex
    return mask


def full_mask(n: int) -> int:
    return (1 << n) - 1


def _check_size(n: int, *, minimum: int) -> None:
    if not minimum <= n <= MAX_VERTICES:
        raise SizeOutOfRange(
            f"vertex count {n} outside {minimum}..{MAX_VERTICES}"
        )


@dataclass(frozen=True)
class Tournament:
    n: int
    rows: tuple[int, ...]  # rows[i] has bit j set iff i beats j

    def __post_init__(self) -> None:
        _check_size(self.n, minimum=1)
        if len(self.rows) != self.n:
            raise SizeOutOfRange(
                f"{len(self.rows)} rows given for {self.n} vertices"
            )
        everyone = full_mask(self.n)
        for i, row in enumerate(self.rows):
            if row >> i & 1:
                raise ReflexivePair(f"vertex {i + 1} beats itself")
            if row & ~everyone:
                raise SizeOutOfRange(
                    f"vertex {i + 1} beats a vertex beyond {self.n}"
                )
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if (self.rows[i] >> j & 1) == (self.rows[j] >> i & 1):
                    raise AsymmetryViolation(
                        f"exactly one of {i + 1}->{j + 1}, {j + 1}->{i + 1}"
                        " must hold"
                    )

    def beats(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def out_neighbours(self, u: int) -> int:
        return self.rows[u]

    def in_neighbours(self, u: int) -> int:
        return full_mask(self.n) & ~self.rows[u] & ~(1 << u)

    def out_degree(self, u: int) -> int:
        return self.rows[u].bit_count()

    def scores(self) -> tuple[int, ...]:
        return tuple(row.bit_count() for row in self.rows)

    def induced(self, vertices: Sequence[int]) -> Tournament:
        """The subtournament on vertices, relabelled in the given order."""
        return Tournament(
            len(vertices),
            tuple(
                mask_of(
                    q
                    for q, other in enumerate(vertices)
                    if self.beats(vertex, other)
                )
                for vertex in vertices
            ),
        )

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.rows[u])]

    def to_networkx(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.arcs())
        return graph


@dataclass(frozen=True)
class OrderedGraph:
    """A graph whose vertex set is the positions 0..n-1 in their order."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_size(self.n, minimum=0)
        if len(self.adj) != self.n:
            raise InvalidGraph(
                f"{len(self.adj)} rows given for {self.n} positions"
            )
        everyone = full_mask(self.n)
        for p, row in enumerate(self.adj):
            if row >> p & 1:
                raise InvalidGraph(f"loop at position {p + 1}")
            if row & ~everyone:
                raise InvalidGraph(f"position {p + 1} joined beyond {self.n}")
            for q in bits(row):
                if not self.adj[q] >> p & 1:
                    raise InvalidGraph(
                        f"edge {p + 1}-{q + 1} is not symmetric"
                    )

    @classmethod
    def from_edges(
        cls, n: int, edges: Iterable[tuple[int, int]]
    ) -> OrderedGraph:
        adj = [0] * n
        for p, q in edges:
            if p == q or not (0 <= p < n and 0 <= q < n):
                raise InvalidGraph(
                    f"bad edge {p + 1}-{q + 1} on {n} positions"
                )
            if adj[p] >> q & 1:
                raise InvalidGraph(f"duplicate edge {p + 1}-{q + 1}")
            adj[p] |= 1 << q
            adj[q] |= 1 << p
        return cls(n, tuple(adj))

    @classmethod
    def from_one_based(
        cls, n: int, edges: Iterable[tuple[int, int]]
    ) -> OrderedGraph:
        return cls.from_edges(n, ((p - 1, q - 1) for p, q in edges))

    @classmethod
    def edgeless(cls, n: int) -> OrderedGraph:
        return cls(n, (0,) * n)

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(
            (p, q)
            for p in range(self.n)
            for q in bits(self.adj[p] >> (p + 1) << (p + 1))
        )

    def one_based_edges(self) -> list[tuple[int, int]]:
        return [(p + 1, q + 1) for p, q in self.edges]

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def adjacent(self, p: int, q: int) -> bool:
        return bool(self.adj[p] >> q & 1)

    def degree(self, p: int) -> int:
        return self.adj[p].bit_count()

    def max_degree(self) -> int:
        return max((row.bit_count() for row in self.adj), default=0)

    def induced(self, positions: Iterable[int]) -> OrderedGraph:
        """The ordered subgraph on positions, compressed to relative order."""
        ordered = sorted(positions)
        return OrderedGraph(
            len(ordered),
            tuple(
                mask_of(
                    j
                    for j, other in enumerate(ordered)
                    if self.adjacent(position, other)
                )
                for position in ordered
            ),
        )

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edges)
        return graph

    def components(self) -> list[tuple[int, ...]]:
        """Connected components as sorted tuples, by first position."""
        return sorted(
            tuple(sorted(component))
            for component in nx.connected_components(self.to_networkx())
        )


def build_tournament(n: int, beats: Iterable[tuple[int, int]]) -> Tournament:
    """Builds a tournament from (winner, loser) pairs of 0-based vertices."""
    _check_size(n, minimum=1)
    rows = [0] * n
    for u, v in beats:
        if u == v:
            raise ReflexivePair(f"vertex {u + 1} beats itself")
        if not (0 <= u < n and 0 <= v < n):
            raise SizeOutOfRange(f"pair {u + 1}->{v + 1} outside 1..{n}")
        rows[u] |= 1 << v
    return Tournament(n, tuple(rows))


def tournament_from_relation(
    n: int, beats: Callable[[int, int], bool]
) -> Tournament:
    return build_tournament(
        n, ((u, v) for u in range(n) for v in range(n) if beats(u, v))
    )


def transitive_tournament(n: int) -> Tournament:
    """TT_n: i beats j iff i < j."""
    return Tournament(
        n, tuple(full_mask(n) & ~full_mask(i + 1) for i in range(n))
    )


def reverse(t: Tournament) -> Tournament:
    return Tournament(t.n, tuple(t.in_neighbours(u) for u in range(t.n)))


def identity_numbering(n: int) -> Numbering:
    return tuple(range(n))


def check_numbering(n: int, numbering: Sequence[int]) -> Numbering:
    if len(numbering) != n or sorted(numbering) != list(range(n)):
        raise NumberingSizeMismatch(
            f"{list(numbering)} is not a numbering of {n} vertices"
        )
    return tuple(numbering)


def inverse(numbering: Sequence[int]) -> list[int]:
    position_of = [0] * len(numbering)
    for position, vertex in enumerate(numbering):
        position_of[vertex] = position
    return position_of


def relabel(t: Tournament, numbering: Sequence[int]) -> Tournament:
    """The tournament on positions: p beats q iff numbering[p] beats
    numbering[q]."""
    numbering = check_numbering(t.n, numbering)
    return t.induced(numbering)


def backedge_graph(t: Tournament, numbering: Sequence[int]) -> OrderedGraph:
    relabelled = relabel(t, numbering)
    adj = []
    for p in range(t.n):
        later = full_mask(t.n) & ~full_mask(p + 1)
        earlier = full_mask(p)
        adj.append(
            (relabelled.in_neighbours(p) & later)
            | (relabelled.rows[p] & earlier)
        )
    return OrderedGraph(t.n, tuple(adj))


def tournament_from_backedges(b: OrderedGraph) -> Tournament:
    rows = []
    for p in range(b.n):
        later = full_mask(b.n) & ~full_mask(p + 1)
        earlier = full_mask(p)
        rows.append((~b.adj[p] & later) | (b.adj[p] & earlier))
    return Tournament(b.n, tuple(rows))


def complement(b: OrderedGraph) -> OrderedGraph:
    everyone = full_mask(b.n)
    return OrderedGraph(
        b.n, tuple(row ^ (everyone & ~(1 << p)) for p, row in enumerate(b.adj))
    )


def reverse_order(b: OrderedGraph) -> OrderedGraph:
    """Maps position p to n-1-p."""
    return OrderedGraph(
        b.n,
        tuple(
            mask_of(b.n - 1 - q for q in bits(b.adj[b.n - 1 - p]))
            for p in range(b.n)
        ),
    )


def reversed_numbering(numbering: Sequence[int]) -> Numbering:
    return tuple(reversed(numbering))


def walk_imbalance(b: OrderedGraph, walk: Sequence[int]) -> int:
    """Forward steps minus backward steps."""
    if not walk:
        raise InvalidWalk("a walk has at least one vertex")
    for position in walk:
        if not 0 <= position < b.n:
            raise InvalidWalk(f"position {position + 1} outside 1..{b.n}")
    imbalance = 0
    for before, after in zip(walk, walk[1:]):
        if before == after or not b.adjacent(before, after):
            raise InvalidWalk(
                f"step {before + 1}->{after + 1} does not follow an edge"
            )
        imbalance += 1 if before < after else -1
    return imbalance
