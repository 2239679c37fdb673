from __future__ import annotations

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import cache
from typing import Iterator

from .core import (
    Numbering,
    OrderedGraph,
    Tournament,
    backedge_graph,
    full_mask,
    relabel,
)
from .errors import (
    SizeOutOfRange,
    TooLarge,
    TooLargeForExactCanonicalization,
)

logger = logging.getLogger(__name__)

MAX_CANONICAL_VERTICES = 8
MAX_ENUMERATED_VERTICES = 7
MAX_CENSUS_VERTICES = 8


@dataclass(frozen=True, order=True)
class CanonicalForm:
    """The least upper-triangle code over all relabelings.

    Bits are listed column by column, (0,1), (0,2), (1,2), (0,3), ..., the
    bit of (i,j) being set iff i beats j, first bit most significant.
    """

    n: int
    code: int

    def bit_length(self) -> int:
        return self.n * (self.n - 1) // 2


def _column(t: Tournament, placed: list[int], vertex: int) -> int:
    column = 0
    for earlier in placed:
        column = column << 1 | (t.rows[earlier] >> vertex & 1)
    return column


def code_of(t: Tournament) -> int:
    """The column-major code of t under its own labelling."""
    code = 0
    for j in range(1, t.n):
        code = code << j | _column(t, list(range(j)), j)
    return code


def canonical_labeling(t: Tournament) -> tuple[CanonicalForm, Numbering]:
    """The canonical form together with a numbering attaining it."""
    if t.n > MAX_CANONICAL_VERTICES:
        raise TooLargeForExactCanonicalization(
            f"exact canonical forms need at most {MAX_CANONICAL_VERTICES}"
            f" vertices, got {t.n}"
        )
    best_columns: list[int] = []
    best_numbering: list[int] = []

    def extend(placed: list[int], columns: list[int], free: int) -> None:
        nonlocal best_columns, best_numbering
        if len(placed) == t.n:
            if not best_columns or columns < best_columns:
                best_columns = list(columns)
                best_numbering = list(placed)
            return
        depth = len(placed)
        options = sorted(
            (_column(t, placed, vertex), vertex)
            for vertex in range(t.n)
            if free >> vertex & 1
        )
        for column, vertex in options:
            columns.append(column)
            # prefixes of equal length compare like the full codes
            if best_columns and columns > best_columns[: depth + 1]:
                columns.pop()
                break
            placed.append(vertex)
            extend(placed, columns, free & ~(1 << vertex))
            placed.pop()
            columns.pop()

    extend([], [], full_mask(t.n))
    code = 0
    for j, column in enumerate(best_columns):
        code = code << j | column
    return CanonicalForm(t.n, code), tuple(best_numbering)


def canonical_form(t: Tournament) -> CanonicalForm:
    return canonical_labeling(t)[0]


def is_isomorphic(a: Tournament, b: Tournament) -> bool:
    return a.n == b.n and canonical_form(a) == canonical_form(b)


def canonical_representative(t: Tournament) -> Tournament:
    return relabel(t, canonical_labeling(t)[1])


def _extend_class(parent: Tournament) -> list[tuple[int, Tournament]]:
    n = parent.n + 1
    newcomer = parent.n
    extensions: list[tuple[int, Tournament]] = []
    for wins in range(1 << parent.n):
        rows = tuple(
            row | ((~wins >> vertex & 1) << newcomer)
            for vertex, row in enumerate(parent.rows)
        )
        child = Tournament(n, rows + (wins,))
        form, numbering = canonical_labeling(child)
        extensions.append((form.code, relabel(child, numbering)))
    return extensions


@cache
def _classes(n: int, jobs: int) -> tuple[Tournament, ...]:
    if n == 1:
        return (Tournament(1, (0,)),)
    parents = _classes(n - 1, jobs)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            batches = list(executor.map(_extend_class, parents))
    else:
        batches = [_extend_class(parent) for parent in parents]
    by_code: dict[int, Tournament] = {}
    for code, representative in itertools.chain.from_iterable(batches):
        by_code.setdefault(code, representative)
    logger.debug("%d classes of order %d", len(by_code), n)
    return tuple(by_code[code] for code in sorted(by_code))


def all_tournaments(n: int, *, jobs: int = 1) -> list[Tournament]:
    """One canonical representative per isomorphism class, by code."""
    if n < 1:
        raise SizeOutOfRange(f"vertex count {n} is below 1")
    if n > MAX_ENUMERATED_VERTICES:
        raise TooLarge(
            f"enumeration stops at {MAX_ENUMERATED_VERTICES} vertices,"
            f" got {n}"
        )
    return list(_classes(n, max(jobs, 1)))


def all_numberings(n: int) -> Iterator[Numbering]:
    return itertools.permutations(range(n))


def backedge_census(t: Tournament) -> frozenset[OrderedGraph]:
    """The distinct backedge graphs of t over all numberings."""
    if t.n > MAX_CENSUS_VERTICES:
        raise TooLarge(
            f"censuses stop at {MAX_CENSUS_VERTICES} vertices, got {t.n}"
        )
    return frozenset(
        backedge_graph(t, numbering) for numbering in all_numberings(t.n)
    )
