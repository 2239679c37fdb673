from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from enum import StrEnum, unique
from fractions import Fraction
from functools import cache
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from .core import OrderedGraph, Tournament, bits, mask_of
from .errors import (
    BudgetExhausted,
    InvalidBlockade,
    SearchFailed,
    VertexNotInBlockade,
)
from .search import Embedding, embed_ordered, embed_tournament

logger = logging.getLogger(__name__)

MAX_QUANTIFIED_TAU = 4
DEFAULT_INVARIANCE_BUDGET = 256

# block indices met by a rainbow copy
Support = frozenset[int]


@dataclass(frozen=True)
class Blockade:
    """Pairwise disjoint nonempty blocks of host vertices, in order."""

    host_size: int
    blocks: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        seen: set[int] = set()
        for index, block in enumerate(self.blocks):
            if not block:
                raise InvalidBlockade(f"block {index + 1} is empty")
            if seen & block:
                raise InvalidBlockade(
                    f"block {index + 1} overlaps an earlier block"
                )
            if any(not 0 <= v < self.host_size for v in block):
                raise InvalidBlockade(
                    f"block {index + 1} leaves the host 1..{self.host_size}"
                )
            seen |= block

    @classmethod
    def of(cls, host_size: int, blocks: Iterable[Iterable[int]]) -> Blockade:
        return cls(host_size, tuple(frozenset(block) for block in blocks))

    @classmethod
    def consecutive(cls, host_size: int, k: int, width: int) -> Blockade:
        """k intervals of width vertices each, starting at vertex 0."""
        if k < 1 or width < 1 or k * width > host_size:
            raise InvalidBlockade(
                f"{k} blocks of width {width} do not fit {host_size} vertices"
            )
        return cls.of(
            host_size,
            (range(i * width, (i + 1) * width) for i in range(k)),
        )

    @classmethod
    def singletons(cls, host_size: int) -> Blockade:
        return cls.of(host_size, ([v] for v in range(host_size)))

    @property
    def length(self) -> int:
        return len(self.blocks)

    @property
    def width(self) -> int:
        return min((len(block) for block in self.blocks), default=0)

    @property
    def respectful(self) -> bool:
        return all(
            max(earlier) < min(later)
            for earlier, later in zip(self.blocks, self.blocks[1:])
        )

    def block_of(self, vertex: int) -> int:
        for index, block in enumerate(self.blocks):
            if vertex in block:
                return index
        raise VertexNotInBlockade(f"vertex {vertex + 1} lies in no block")

    def block_indices(self) -> list[int]:
        """Block index per host vertex, -1 outside every block."""
        indices = [-1] * self.host_size
        for index, block in enumerate(self.blocks):
            for vertex in block:
                indices[vertex] = index
        return indices

    def union(self, indices: Iterable[int]) -> int:
        return mask_of(v for i in indices for v in self.blocks[i])

    def sub_blockade(self, indices: Iterable[int]) -> Blockade:
        kept = sorted(set(indices))
        if any(not 0 <= i < self.length for i in kept):
            raise InvalidBlockade(f"indices {kept} leave 0..{self.length - 1}")
        return Blockade(self.host_size, tuple(self.blocks[i] for i in kept))

    def contract(self, blocks: Sequence[Iterable[int]]) -> Blockade:
        """Replaces each block by a nonempty subset of itself."""
        if len(blocks) != self.length:
            raise InvalidBlockade(
                f"a contraction keeps all {self.length} blocks"
            )
        contracted = Blockade.of(self.host_size, blocks)
        for index, (old, new) in enumerate(
            zip(self.blocks, contracted.blocks)
        ):
            if not new <= old:
                raise InvalidBlockade(
                    f"block {index + 1} grows under contraction"
                )
        return contracted

    def one_based(self) -> list[list[int]]:
        return [sorted(v + 1 for v in block) for block in self.blocks]


Host = OrderedGraph | Tournament


def _check_host(host: Host, blockade: Blockade) -> None:
    if host.n != blockade.host_size:
        raise InvalidBlockade(
            f"blockade over {blockade.host_size} vertices used on a host of"
            f" {host.n}"
        )


def _embed(
    host: Host,
    pattern: Host,
    block_of: Sequence[int],
    allowed: Optional[int] = None,
) -> Optional[Embedding]:
    if isinstance(host, OrderedGraph) and isinstance(pattern, OrderedGraph):
        return embed_ordered(
            host, pattern, block_of=block_of, allowed=allowed
        )
    if isinstance(host, Tournament) and isinstance(pattern, Tournament):
        return embed_tournament(
            host, pattern, block_of=block_of, allowed=allowed
        )
    raise TypeError(
        "host and pattern must both be ordered graphs or both be tournaments"
    )


def _supports(length: int, size: int) -> Iterator[Support]:
    return (
        frozenset(support)
        for support in itertools.combinations(range(length), size)
    )


def rainbow_copy(
    host: Host, blockade: Blockade, pattern: Host
) -> Optional[Embedding]:
    """A copy of pattern meeting each block at most once, inside blocks."""
    _check_host(host, blockade)
    return _embed(host, pattern, blockade.block_indices())


def trace(host: Host, blockade: Blockade, pattern: Host) -> frozenset[Support]:
    """Supports of all rainbow copies of pattern."""
    _check_host(host, blockade)
    block_of = blockade.block_indices()
    return frozenset(
        support
        for support in _supports(blockade.length, pattern.n)
        if _embed(host, pattern, block_of, blockade.union(support))
        is not None
    )


@cache
def all_ordered_graphs(max_vertices: int) -> tuple[OrderedGraph, ...]:
    """Every ordered graph on 1..max_vertices positions."""
    graphs: list[OrderedGraph] = []
    for n in range(1, max_vertices + 1):
        pairs = list(itertools.combinations(range(n), 2))
        for chosen in range(1 << len(pairs)):
            graphs.append(
                OrderedGraph.from_edges(
                    n, (pairs[i] for i in bits(chosen))
                )
            )
    return tuple(graphs)


def _patterns(
    tau: int, patterns: Optional[Sequence[OrderedGraph]]
) -> Sequence[OrderedGraph]:
    if patterns is not None:
        return [pattern for pattern in patterns if pattern.n <= tau]
    if tau > MAX_QUANTIFIED_TAU:
        raise BudgetExhausted(
            f"quantifying over every pattern stops at {MAX_QUANTIFIED_TAU}"
            f" vertices, got {tau}; pass an explicit pattern list"
        )
    return all_ordered_graphs(tau)


@dataclass(frozen=True)
class UniformityResult:
    uniform: bool
    pattern: Optional[OrderedGraph] = None
    present: frozenset[Support] = frozenset()
    missing: Optional[Support] = None


def is_support_uniform(
    host: OrderedGraph,
    blockade: Blockade,
    tau: int,
    *,
    patterns: Optional[Sequence[OrderedGraph]] = None,
) -> UniformityResult:
    """Every trace of a pattern on at most tau vertices is empty or full.

    A failing result names the first offending pattern and the first
    support its trace lacks.
    """
    for pattern in _patterns(tau, patterns):
        found = trace(host, blockade, pattern)
        if not found:
            continue
        for support in _supports(blockade.length, pattern.n):
            if support not in found:
                return UniformityResult(False, pattern, found, support)
    return UniformityResult(True)


@unique
class Verdict(StrEnum):
    VERIFIED_EXHAUSTIVE = "verified_exhaustive"
    REFUTED = "refuted"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class InvarianceResult:
    verdict: Verdict
    examined: int
    contraction: Optional[Blockade] = None
    pattern: Optional[OrderedGraph] = None


def _contraction_count(blockade: Blockade, least: int) -> int:
    return math.prod(
        sum(
            math.comb(len(block), size)
            for size in range(least, len(block) + 1)
        )
        for block in blockade.blocks
    )


def _all_contractions(blockade: Blockade, least: int) -> Iterator[Blockade]:
    choices = [
        [
            subset
            for size in range(least, len(block) + 1)
            for subset in itertools.combinations(sorted(block), size)
        ]
        for block in blockade.blocks
    ]
    for chosen in itertools.product(*choices):
        yield blockade.contract(chosen)


def _sampled_contractions(
    blockade: Blockade, least: int, count: int, rng: np.random.Generator
) -> Iterator[Blockade]:
    for _ in range(count):
        chosen = []
        for block in blockade.blocks:
            ordered = sorted(block)
            size = int(rng.integers(least, len(ordered) + 1))
            picks = rng.choice(len(ordered), size=size, replace=False)
            chosen.append([ordered[int(i)] for i in picks])
        yield blockade.contract(chosen)


def check_support_invariance(
    host: OrderedGraph,
    blockade: Blockade,
    kappa: Fraction | float,
    tau: int,
    *,
    budget: int = DEFAULT_INVARIANCE_BUDGET,
    rng: Optional[np.random.Generator] = None,
    patterns: Optional[Sequence[OrderedGraph]] = None,
) -> InvarianceResult:
    """Compares traces against contractions of width at least kappa times
    the width.

    All such contractions are tried when there are at most budget of them;
    otherwise budget random ones are, and a clean run is undetermined.
    """
    least = max(1, math.ceil(Fraction(kappa) * blockade.width))
    # traces only shrink under contraction, so empty ones stay equal
    baseline = [
        (pattern, found)
        for pattern in _patterns(tau, patterns)
        if (found := trace(host, blockade, pattern))
    ]
    exhaustive = _contraction_count(blockade, least) <= budget
    if exhaustive:
        contractions = _all_contractions(blockade, least)
    else:
        contractions = _sampled_contractions(
            blockade, least, budget, rng or np.random.default_rng(0)
        )
    block_of = blockade.block_indices()
    examined = 0
    for contraction in contractions:
        examined += 1
        for pattern, found in baseline:
            for support in found:
                if (
                    _embed(host, pattern, block_of, contraction.union(support))
                    is None
                ):
                    return InvarianceResult(
                        Verdict.REFUTED, examined, contraction, pattern
                    )
    if exhaustive:
        return InvarianceResult(Verdict.VERIFIED_EXHAUSTIVE, examined)
    return InvarianceResult(Verdict.UNDETERMINED, examined)


def _delete_block(
    blockade: Blockade, uniformity: UniformityResult
) -> Blockade:
    """Drops the block that most unbalances the offending trace."""
    assert uniformity.pattern is not None
    missing = [
        s
        for s in _supports(blockade.length, uniformity.pattern.n)
        if s not in uniformity.present
    ]
    present = list(uniformity.present)
    # aim for whichever of an empty or a full trace is closer
    target = missing if len(missing) <= len(present) else present
    counts = [
        sum(index in s for s in target) for index in range(blockade.length)
    ]
    victim = counts.index(max(counts))
    return blockade.sub_blockade(
        i for i in range(blockade.length) if i != victim
    )


def _thin_blocks(
    host: OrderedGraph, blockade: Blockade, uniformity: UniformityResult
) -> Optional[Blockade]:
    """Removes one vertex of a sporadic copy from its largest block."""
    assert uniformity.pattern is not None
    block_of = blockade.block_indices()
    for support in sorted(uniformity.present, key=sorted):
        copy = _embed(
            host, uniformity.pattern, block_of, blockade.union(support)
        )
        if copy is None:
            continue
        vertex = max(
            copy, key=lambda v: (len(blockade.blocks[block_of[v]]), -v)
        )
        index = block_of[vertex]
        if len(blockade.blocks[index]) == 1:
            continue
        return blockade.contract(
            [
                block - {vertex} if i == index else block
                for i, block in enumerate(blockade.blocks)
            ]
        )
    return None


def find_uniform_minor(
    host: OrderedGraph,
    blockade: Blockade,
    k: int,
    tau: int,
    kappa: Fraction | float,
    *,
    budget: int = DEFAULT_INVARIANCE_BUDGET,
    rng: Optional[np.random.Generator] = None,
    patterns: Optional[Sequence[OrderedGraph]] = None,
    max_rounds: Optional[int] = None,
) -> Blockade:
    """A length-k minor that is tau-support-uniform and not refuted as
    (kappa, tau)-support-invariant, found greedily."""
    _check_host(host, blockade)
    if k < 1:
        raise SearchFailed(f"minor length must be positive, got {k}")
    rounds = max_rounds or blockade.length + host.n + 1
    current = blockade
    for round_number in range(rounds):
        if current.length < k:
            break
        uniformity = is_support_uniform(host, current, tau, patterns=patterns)
        if not uniformity.uniform:
            if current.length > k:
                current = _delete_block(current, uniformity)
                continue
            thinned = _thin_blocks(host, current, uniformity)
            if thinned is None:
                break
            current = thinned
            continue
        if current.length > k:
            # uniformity passes to sub-blockades
            current = current.sub_blockade(range(k))
        invariance = check_support_invariance(
            host,
            current,
            kappa,
            tau,
            budget=budget,
            rng=rng,
            patterns=patterns,
        )
        if invariance.verdict is not Verdict.REFUTED:
            logger.info(
                "uniform minor after %d rounds: %s",
                round_number + 1,
                invariance.verdict,
            )
            return current
        assert invariance.contraction is not None
        current = invariance.contraction
    raise SearchFailed(
        f"no uniform minor of length {k}; stopped at length {current.length}"
        f" and width {current.width}"
    )
