from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional, Sequence

import networkx as nx
import numpy as np

from .blockade import Blockade, rainbow_copy
from .catalog import D_5, OBSTRUCTIONS, P_7_MINUS
from .core import (
    OrderedGraph,
    Tournament,
    bits,
    tournament_from_backedges,
    walk_imbalance,
)
from .errors import (
    InvalidParameters,
    InvalidWalk,
    RetryLimitExceeded,
    VerificationFailed,
    VertexNotInBlockade,
)
from .sampling import substream
from .search import (
    MAX_EXACT_PAIR_VERTICES,
    PairKind,
    PurePair,
    max_anticomplete_pair,
    max_pure_pair,
)

logger = logging.getLogger(__name__)

DEFAULT_RETRIES = 20
DEFAULT_WALK_SAMPLES = 2_000
MAX_BALANCED_LENGTH = 6

Path = tuple[int, int, int, int]


def degree_threshold(c: Fraction) -> int:
    """The least d with (d c^2 / 8e)^d at least 6."""
    if not 0 < c < 1:
        raise InvalidParameters(f"c must lie strictly in (0, 1), not {c}")
    scale = float(c) ** 2 / (8 * math.e)
    d = max(1, math.floor(1 / scale))
    while True:
        base = d * scale
        if base > 1 and d * math.log(base) >= math.log(6):
            return d
        d += 1


@dataclass(frozen=True)
class ConstructionParams:
    k: int
    c: Fraction
    width: int
    seed: int = 0

    def __post_init__(self) -> None:
        if self.k < 1:
            raise InvalidParameters(f"k must be at least 1, got {self.k}")
        if self.width < 1:
            raise InvalidParameters(
                f"width must be at least 1, got {self.width}"
            )
        if not 0 < self.c < 1:
            raise InvalidParameters(
                f"c must lie strictly between 0 and 1, got {self.c}"
            )
        if self.n < 2:
            raise InvalidParameters(
                f"{self.k} blocks of width {self.width} give fewer than two"
                " vertices"
            )

    @classmethod
    def of(
        cls, k: int, c: Fraction | str | float, width: int, seed: int = 0
    ) -> ConstructionParams:
        try:
            ratio = Fraction(c)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidParameters(f"c={c!r} is not a fraction") from exc
        return cls(k, ratio, width, seed)

    @property
    def n(self) -> int:
        return self.k * self.width

    @property
    def c_prime(self) -> Fraction:
        return self.c / self.k

    @property
    def girth(self) -> int:
        return 6 * 3**self.k

    @property
    def degree_threshold(self) -> int:
        return degree_threshold(self.c_prime)

    @property
    def degree_cap(self) -> int:
        return self.degree_threshold ** (3**self.k)

    @property
    def edge_probability(self) -> Fraction:
        return 4 / (self.c_prime**2 * self.n)

    @property
    def sampling_probability(self) -> Fraction:
        # the exact probability is above one for every desk-scale n
        return min(self.edge_probability, Fraction(1, 2 * self.n))

    def to_dict(self) -> dict[str, object]:
        return {
            "k": self.k,
            "c": str(self.c),
            "width": self.width,
            "seed": self.seed,
            "n": self.n,
            "c_prime": str(self.c_prime),
            "girth": self.girth,
            "d": self.degree_threshold,
            "D": str(self.degree_cap),
            "p": str(self.edge_probability),
            "sampling_p": str(self.sampling_probability),
        }


@dataclass(frozen=True)
class GirthSample:
    graph: OrderedGraph
    attempts: int
    degree_deletions: int
    cycle_deletions: int
    anticomplete_order: Optional[int]

    @property
    def anticomplete_verified(self) -> bool:
        return self.anticomplete_order is not None

    @property
    def degrees(self) -> list[int]:
        return [self.graph.degree(v) for v in range(self.graph.n)]


def _random_graph(
    size: int, probability: float, rng: np.random.Generator
) -> nx.Graph:
    coins = rng.random((size, size)) < probability
    graph = nx.Graph()
    graph.add_nodes_from(range(size))
    graph.add_edges_from(
        (u, v) for u in range(size) for v in range(u + 1, size) if coins[u, v]
    )
    return graph


def _prune(graph: nx.Graph, g: int, degree_bound: int) -> tuple[int, int]:
    """Deletes high-degree vertices, then the last vertex of each short
    cycle."""
    heavy = [v for v, degree in graph.degree if degree >= degree_bound]
    graph.remove_nodes_from(heavy)
    cycle_deletions = 0
    while g >= 3:
        cycle = next(nx.simple_cycles(graph, length_bound=g), None)
        if cycle is None:
            break
        graph.remove_node(max(cycle))
        cycle_deletions += 1
    return len(heavy), cycle_deletions


def _ordered(graph: nx.Graph, vertices: Sequence[int]) -> OrderedGraph:
    position = {v: p for p, v in enumerate(vertices)}
    return OrderedGraph.from_edges(
        len(vertices),
        (
            (position[u], position[v])
            for u, v in graph.subgraph(vertices).edges
        ),
    )


def sample_girth_graph(
    n: int,
    c: Fraction,
    g: int,
    *,
    seed: int,
    edge_probability: Optional[Fraction] = None,
    degree_bound: Optional[int] = None,
    require_anticomplete: bool = True,
    retries: int = DEFAULT_RETRIES,
) -> GirthSample:
    """An n-vertex graph with no cycle of length at most g and small degrees.

    Samples 2n vertices, deletes every vertex of degree at least the bound
    and one vertex per short cycle, and keeps the first n survivors. With
    require_anticomplete, samples holding an anticomplete pair of order at
    least cn are resampled; that is decided exactly up to 24 vertices.
    """
    if n < 2:
        raise InvalidParameters(f"n must be at least 2, got {n}")
    c = Fraction(c)
    bound = degree_threshold(c) if degree_bound is None else degree_bound
    if edge_probability is None:
        edge_probability = min(4 / (c**2 * n), Fraction(1))
    for attempt in range(1, retries + 1):
        rng = substream(seed, f"girth-graph/{attempt}")
        graph = _random_graph(2 * n, float(edge_probability), rng)
        degree_deletions, cycle_deletions = _prune(graph, g, bound)
        survivors = sorted(graph.nodes)
        if len(survivors) < n:
            logger.debug(
                "attempt %d kept %d of %d vertices", attempt, len(survivors), n
            )
            continue
        sample = _ordered(graph, survivors[:n])
        anticomplete_order = None
        if n <= MAX_EXACT_PAIR_VERTICES:
            pair = max_anticomplete_pair(sample)
            anticomplete_order = 0 if pair is None else pair.order
            if require_anticomplete and anticomplete_order >= c * n:
                logger.debug(
                    "attempt %d has an anticomplete pair of order %d",
                    attempt,
                    anticomplete_order,
                )
                continue
        return GirthSample(
            sample,
            attempt,
            degree_deletions,
            cycle_deletions,
            anticomplete_order,
        )
    raise RetryLimitExceeded(
        f"no acceptable sample on {n} vertices in {retries} attempts"
    )


def b_length(blockade: Blockade, u: int, v: int) -> int:
    return abs(blockade.block_of(v) - blockade.block_of(u))


def _b_lengths(blockade: Blockade, vertices: Sequence[int]) -> list[int]:
    indices = blockade.block_indices()
    blocks = [indices[v] for v in vertices]
    if -1 in blocks:
        vertex = vertices[blocks.index(-1)]
        raise VertexNotInBlockade(f"vertex {vertex + 1} lies in no block")
    return [abs(b - a) for a, b in zip(blocks, blocks[1:])]


def is_welcoming(
    j: OrderedGraph, blockade: Blockade, path: Sequence[int]
) -> bool:
    """A three-edge path from an earlier end s to a later end t, whose
    edges are all B-longer than (s, t), with imbalance exactly one."""
    if len(path) != 4:
        raise InvalidWalk(f"a welcoming path has four vertices, got {path}")
    imbalance = walk_imbalance(j, path)
    s, t = path[0], path[-1]
    if len(set(path)) != 4 or s > t:
        return False
    (ends,) = _b_lengths(blockade, (s, t))
    return (
        ends >= 1
        and all(length > ends for length in _b_lengths(blockade, path))
        and imbalance == 1
    )


def welcoming_paths(j: OrderedGraph, blockade: Blockade) -> Iterator[Path]:
    """Every welcoming path of j, listed from its earlier end."""
    for a, b in j.edges:
        for first, second in ((a, b), (b, a)):
            for s in bits(j.adj[first] & ~(1 << second)):
                for t in bits(j.adj[second] & ~(1 << first) & ~(1 << s)):
                    path = (s, first, second, t)
                    if s < t and is_welcoming(j, blockade, path):
                        yield path


def good_pairs(
    j_next: OrderedGraph, blockade: Blockade, i: int
) -> set[tuple[int, int]]:
    """Nonadjacent pairs of B-length exactly i joined by a welcoming path."""
    return {
        (path[0], path[-1])
        for path in welcoming_paths(j_next, blockade)
        if b_length(blockade, path[0], path[-1]) == i
        and not j_next.adjacent(path[0], path[-1])
    }


@dataclass
class ClosureResult:
    graph: OrderedGraph
    added: dict[int, list[tuple[int, int]]] = field(default_factory=dict)
    max_degrees: dict[int, int] = field(default_factory=dict)


def welcoming_closure(j_k: OrderedGraph, blockade: Blockade) -> ClosureResult:
    """Adds the edges of every i-good pair for i = k-1 down to 1."""
    k = blockade.length
    current = j_k
    result = ClosureResult(current, max_degrees={k: j_k.max_degree()})
    for i in range(k - 1, 0, -1):
        pairs = sorted(good_pairs(current, blockade, i))
        if pairs:
            current = OrderedGraph.from_edges(
                current.n, [*current.edges, *pairs]
            )
        result.added[i] = pairs
        result.max_degrees[i] = current.max_degree()
        logger.debug("level %d adds %d edges", i, len(pairs))
    result.graph = current
    return result


@dataclass(frozen=True)
class BulletResult:
    name: str
    statement: str
    passed: Optional[bool]
    required: bool = True
    detail: str = ""


@dataclass
class Counterexample:
    params: ConstructionParams
    sample: GirthSample
    closure: ClosureResult
    blockade: Blockade
    tournament: Tournament
    bullets: list[BulletResult] = field(default_factory=list)

    @property
    def graph(self) -> OrderedGraph:
        return self.closure.graph

    @property
    def failed(self) -> list[str]:
        return [
            bullet.name
            for bullet in self.bullets
            if bullet.required and bullet.passed is not True
        ]


def unbalanced_cycle(
    j: OrderedGraph, max_length: int = MAX_BALANCED_LENGTH
) -> Optional[list[int]]:
    """A cycle of length at most max_length with nonzero imbalance."""
    for cycle in nx.simple_cycles(j.to_networkx(), length_bound=max_length):
        if walk_imbalance(j, [*cycle, cycle[0]]) != 0:
            return cycle
    return None


def _unbalanced_walk(
    j: OrderedGraph, samples: int, rng: np.random.Generator
) -> Optional[list[int]]:
    """Random closed walks of length at most six; the first unbalanced one."""
    starts = [v for v in range(j.n) if j.adj[v]]
    if not starts:
        return None
    for _ in range(samples):
        walk = [starts[int(rng.integers(len(starts)))]]
        for _ in range(int(rng.integers(2, MAX_BALANCED_LENGTH + 1))):
            neighbours = list(bits(j.adj[walk[-1]]))
            walk.append(neighbours[int(rng.integers(len(neighbours)))])
        if walk[-1] == walk[0] and walk_imbalance(j, walk) != 0:
            return walk
    return None


def _check_degrees(
    params: ConstructionParams, closure: ClosureResult
) -> BulletResult:
    degree = closure.graph.max_degree()
    return BulletResult(
        "a",
        "maximum degree of J is at most D",
        degree <= params.degree_cap,
        detail=f"maximum degree {degree}",
    )


def _check_balance(
    j: OrderedGraph, samples: int, rng: np.random.Generator
) -> BulletResult:
    cycle = unbalanced_cycle(j)
    walk = None if cycle is not None else _unbalanced_walk(j, samples, rng)
    witness = cycle if cycle is not None else walk
    return BulletResult(
        "b",
        "every closed walk of length at most six in J is balanced",
        witness is None,
        detail=(
            f"{samples} sampled walks agree"
            if witness is None
            else f"unbalanced {[v + 1 for v in witness]}"
        ),
    )


def _check_obstructions(j: OrderedGraph, blockade: Blockade) -> BulletResult:
    for index, obstruction in enumerate(OBSTRUCTIONS, start=1):
        copy = rainbow_copy(j, blockade, obstruction)
        if copy is not None:
            return BulletResult(
                "c",
                "J has no rainbow copy of an obstruction",
                False,
                detail=f"OBS_{index} at {[v + 1 for v in copy]}",
            )
    return BulletResult("c", "J has no rainbow copy of an obstruction", True)


def forest_pure_pair(j: OrderedGraph) -> Optional[PurePair]:
    """A pure pair of G that exists because J is a forest.

    The larger colour class of a forest is independent in J, so its first
    half beats its second half in G.
    """
    graph = j.to_networkx()
    if not nx.is_forest(graph):
        return None
    colour = nx.bipartite.color(graph)
    classes = [
        sorted(v for v in range(j.n) if colour[v] == side) for side in (0, 1)
    ]
    larger = max(classes, key=len)
    half = len(larger) // 2
    if half == 0:
        return None
    return PurePair(
        frozenset(larger[:half]),
        frozenset(larger[-half:]),
        PairKind.DIRECTED,
        exact=False,
    )


def _check_pure_pairs(
    params: ConstructionParams, g: Tournament, strict: bool
) -> BulletResult:
    statement = "G has no pure pair of order at least cW"
    if g.n > MAX_EXACT_PAIR_VERTICES:
        return BulletResult(
            "d", statement, None, strict, detail="too large to decide"
        )
    pair = max_pure_pair(g)
    order = 0 if pair is None else pair.order
    return BulletResult(
        "d",
        statement,
        order < params.c * params.width,
        detail=f"largest pure pair has order {order}",
    )


def _check_rainbow_tournaments(
    g: Tournament, blockade: Blockade
) -> BulletResult:
    for name, pattern in (("D_5", D_5), ("P_7^-", P_7_MINUS)):
        copy = rainbow_copy(g, blockade, pattern)
        if copy is not None:
            return BulletResult(
                "e",
                "G has no rainbow copy of D_5 or P_7^-",
                False,
                detail=f"{name} at {[v + 1 for v in copy]}",
            )
    return BulletResult("e", "G has no rainbow copy of D_5 or P_7^-", True)


def _check_blockade(
    params: ConstructionParams, blockade: Blockade
) -> BulletResult:
    return BulletResult(
        "f",
        "the blockade is respectful with k blocks of width W",
        blockade.respectful
        and blockade.length == params.k
        and all(len(block) == params.width for block in blockade.blocks),
    )


def _check_welcoming_ends(j: OrderedGraph, blockade: Blockade) -> BulletResult:
    for path in welcoming_paths(j, blockade):
        if not j.adjacent(path[0], path[-1]):
            return BulletResult(
                "g",
                "the ends of every welcoming path of J are adjacent",
                False,
                detail=f"path {[v + 1 for v in path]}",
            )
    return BulletResult(
        "g", "the ends of every welcoming path of J are adjacent", True
    )


def _check_levels(closure: ClosureResult, blockade: Blockade) -> BulletResult:
    statement = (
        "level-i edges have B-length i and degrees grow at most cubically"
    )
    for i, pairs in closure.added.items():
        for s, t in pairs:
            if b_length(blockade, s, t) != i:
                return BulletResult(
                    "h", statement, False, detail=f"edge {s + 1}-{t + 1}"
                )
        if closure.max_degrees[i] > closure.max_degrees[i + 1] ** 3:
            return BulletResult(
                "h", statement, False, detail=f"degree jump at level {i}"
            )
    return BulletResult("h", statement, True)


def assemble_counterexample(
    params: ConstructionParams,
    *,
    strict: bool = False,
    walk_samples: int = DEFAULT_WALK_SAMPLES,
    retries: int = DEFAULT_RETRIES,
) -> Counterexample:
    """Samples J_k, closes it under welcoming paths and checks every bullet.

    The pure-pair bullet is decided exactly up to 24 vertices and is
    required there; above that it is undecided, which counts as a failure
    only with strict.
    """
    sample = sample_girth_graph(
        params.n,
        params.c_prime,
        params.girth,
        seed=params.seed,
        edge_probability=params.sampling_probability,
        degree_bound=params.degree_threshold,
        require_anticomplete=False,
        retries=retries,
    )
    blockade = Blockade.consecutive(params.n, params.k, params.width)
    closure = welcoming_closure(sample.graph, blockade)
    tournament = tournament_from_backedges(closure.graph)
    logger.info(
        "J has %d edges after closing %d sampled ones",
        closure.graph.edge_count,
        sample.graph.edge_count,
    )
    walks = substream(params.seed, "closed-walks")
    result = Counterexample(params, sample, closure, blockade, tournament)
    result.bullets = [
        _check_degrees(params, closure),
        _check_balance(closure.graph, walk_samples, walks),
        _check_obstructions(closure.graph, blockade),
        _check_pure_pairs(params, tournament, strict),
        _check_rainbow_tournaments(tournament, blockade),
        _check_blockade(params, blockade),
        _check_welcoming_ends(closure.graph, blockade),
        _check_levels(closure, blockade),
    ]
    return result


def build_counterexample(
    params: ConstructionParams,
    *,
    strict: bool = False,
    walk_samples: int = DEFAULT_WALK_SAMPLES,
    retries: int = DEFAULT_RETRIES,
) -> Counterexample:
    """Raises VerificationFailed naming every required bullet that fails."""
    result = assemble_counterexample(
        params, strict=strict, walk_samples=walk_samples, retries=retries
    )
    if result.failed:
        raise VerificationFailed(
            f"construction fails bullets {', '.join(result.failed)}",
            failed=result.failed,
        )
    return result


def obstruction_supports(
    j: OrderedGraph, blockade: Blockade
) -> dict[int, list[tuple[int, ...]]]:
    """Rainbow copies of each obstruction, found by brute force."""
    indices = blockade.block_indices()
    found: dict[int, list[tuple[int, ...]]] = {}
    for number, obstruction in enumerate(OBSTRUCTIONS, start=1):
        for chosen in itertools.combinations(range(j.n), obstruction.n):
            blocks = [indices[v] for v in chosen]
            if -1 in blocks or len(set(blocks)) < len(blocks):
                continue
            if j.induced(chosen) == obstruction:
                found.setdefault(number, []).append(chosen)
    return found
