from __future__ import annotations

import re
from functools import cache
from typing import Iterable

from .core import (
    OrderedGraph,
    Tournament,
    backedge_graph,
    reverse,
    reverse_order,
    tournament_from_backedges,
    tournament_from_relation,
    transitive_tournament,
)
from .enumeration import canonical_form, is_isomorphic
from .errors import CatalogMismatch, UnknownName

# Backedge graphs as drawn, 1-based positions.
DRAWN_D5_SPARSE = OrderedGraph.from_one_based(5, [(1, 4), (1, 5), (2, 5)])
DRAWN_D5_DENSE = OrderedGraph.from_one_based(
    5, [(1, 3), (1, 5), (3, 5), (2, 4)]
)
DRAWN_P7_MINUS = OrderedGraph.from_one_based(
    6, [(1, 6), (1, 4), (3, 6), (2, 5)]
)
DRAWN_H6 = OrderedGraph.from_one_based(6, [(1, 6), (1, 4), (2, 6), (3, 5)])
DRAWN_F6 = OrderedGraph.from_one_based(6, [(1, 4), (1, 5), (2, 6), (3, 6)])

# A second optimal numbering of F_6, reached from the backedge graph
# {16, 25, 15, 26} by the order (v1, v3, v4, v5, v6, v2).
F6_ALTERNATIVE = OrderedGraph.from_one_based(
    6, [(1, 6), (2, 5), (1, 5), (2, 6)]
)
F6_ALTERNATIVE_NUMBERING = (0, 2, 3, 4, 5, 1)

OBS_1 = OrderedGraph.from_one_based(4, [(1, 3), (2, 4), (1, 4)])
OBS_2 = OrderedGraph.from_one_based(5, [(1, 3), (3, 5), (1, 4), (2, 5)])
OBS_3 = OrderedGraph.from_one_based(
    6, [(1, 3), (1, 5), (3, 6), (2, 4), (4, 6)]
)
OBS_4 = reverse_order(OBS_3)
OBSTRUCTIONS = (OBS_1, OBS_2, OBS_3, OBS_4)

CYCLIC_TRIANGLE = tournament_from_relation(3, lambda i, j: (j - i) % 3 == 1)
D_5 = tournament_from_relation(5, lambda i, j: (j - i) % 5 in (1, 2))
P_7 = tournament_from_relation(7, lambda i, j: (j - i) % 7 in (1, 2, 4))
P_7_MINUS = P_7.induced(range(6))

_D5_EXTENSION = re.compile(
    r"D5_(?:\{(?P<braced>[0-9, ]*)\}|(?P<bare>[0-9]*))"
)
_TRANSITIVE = re.compile(r"TT_(?P<n>[0-9]+)")


def d5_extension(out_neighbours: Iterable[int]) -> Tournament:
    """D_5 plus a sixth vertex beating exactly the given 1-based vertices."""
    chosen = set(out_neighbours)
    if not chosen <= set(range(1, 6)):
        raise UnknownName(f"D5_X needs X within 1..5, got {sorted(chosen)}")
    newcomer = 5

    def beats(i: int, j: int) -> bool:
        if i == newcomer:
            return j + 1 in chosen
        if j == newcomer:
            return i + 1 not in chosen
        return D_5.beats(i, j)

    return tournament_from_relation(6, beats)


H_6 = d5_extension({1, 3})
H_6_BAR = reverse(H_6)
F_6 = tournament_from_backedges(DRAWN_F6)

_FIXED: dict[str, Tournament | OrderedGraph] = {
    "C_3": CYCLIC_TRIANGLE,
    "D_5": D_5,
    "P_7": P_7,
    "P_7_minus": P_7_MINUS,
    "H_6": H_6,
    "H_6_bar": H_6_BAR,
    "F_6": F_6,
    "OBS_1": OBS_1,
    "OBS_2": OBS_2,
    "OBS_3": OBS_3,
    "OBS_4": OBS_4,
}


def names() -> list[str]:
    return sorted(_FIXED) + ["D5_{...}", "TT_<n>"]


@cache
def check_drawings() -> None:
    """Checks every drawn backedge graph against its formula."""
    deletions = [
        canonical_form(P_7.induced([v for v in range(7) if v != deleted]))
        for deleted in range(7)
    ]
    if len(set(deletions)) != 1:
        raise CatalogMismatch("vertex deletions of P_7 are not isomorphic")
    agreements = [
        ("sparse D_5", DRAWN_D5_SPARSE, D_5),
        ("dense D_5", DRAWN_D5_DENSE, D_5),
        ("P_7_minus", DRAWN_P7_MINUS, P_7_MINUS),
        ("H_6", DRAWN_H6, H_6),
    ]
    for label, drawn, defined in agreements:
        if not is_isomorphic(tournament_from_backedges(drawn), defined):
            raise CatalogMismatch(
                f"drawn {label} backedge graph disagrees with its formula"
            )
    renumbered = backedge_graph(
        tournament_from_backedges(F6_ALTERNATIVE), F6_ALTERNATIVE_NUMBERING
    )
    if renumbered != DRAWN_F6:
        raise CatalogMismatch("the second F_6 numbering misses drawn F_6")


def catalog(name: str) -> Tournament | OrderedGraph:
    check_drawings()
    if name in _FIXED:
        return _FIXED[name]
    if match := _TRANSITIVE.fullmatch(name):
        return transitive_tournament(int(match["n"]))
    if match := _D5_EXTENSION.fullmatch(name):
        digits = (match["braced"] or match["bare"] or "").replace(",", "")
        return d5_extension(int(digit) for digit in digits.replace(" ", ""))
    raise UnknownName(f"no catalog entry named {name!r}")


def catalog_tournament(name: str) -> Tournament:
    found = catalog(name)
    if not isinstance(found, Tournament):
        raise UnknownName(f"{name} names an ordered graph, not a tournament")
    return found


def catalog_ordered(name: str) -> OrderedGraph:
    found = catalog(name)
    if not isinstance(found, OrderedGraph):
        raise UnknownName(f"{name} names a tournament, not an ordered graph")
    return found
