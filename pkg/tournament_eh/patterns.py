from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field, fields
from enum import StrEnum, unique
from functools import cache
from typing import Callable, Iterable, Optional, Sequence

from .core import (
    Numbering,
    OrderedGraph,
    Tournament,
    backedge_graph,
    bits,
    full_mask,
    reverse_order,
)
from .errors import BudgetExhausted, NotAComponent, TooLarge

logger = logging.getLogger(__name__)

MAX_CERTIFICATE_VERTICES = 7
DEFAULT_CERTIFICATE_BUDGET = 200_000
MAX_SUBSET_SIZE = 3


@dataclass(frozen=True, order=True, kw_only=True)
class PatternTags:
    vertex_count: int
    left_star: bool
    right_star: bool
    left_spike: bool
    right_spike: bool
    monotone_path: bool
    left_broom: bool
    right_broom: bool
    clique: bool
    left_bristle: bool
    right_bristle: bool
    crossed_left_star: bool
    crossed_right_star: bool
    left_split: bool
    right_split: bool
    single_vertex: bool

    @property
    def recognized(self) -> bool:
        return any(
            getattr(self, flag.name)
            for flag in fields(self)
            if flag.name != "vertex_count"
        )

    @property
    def left_two_star(self) -> bool:
        return self.left_star and self.vertex_count == 3

    @property
    def right_two_star(self) -> bool:
        return self.right_star and self.vertex_count == 3

    def names(self) -> list[str]:
        return [
            flag.name
            for flag in fields(self)
            if flag.name != "vertex_count" and getattr(self, flag.name)
        ]


def _edge_set(c: OrderedGraph) -> set[tuple[int, int]]:
    return set(c.edges)


def _is_left_star(c: OrderedGraph) -> bool:
    return c.n > 0 and c.degree(0) == c.n - 1 and c.edge_count == c.n - 1


def _is_left_spike(c: OrderedGraph) -> bool:
    return c.n > 1 and c.degree(1) == c.n - 1 and c.edge_count == c.n - 1


def _is_monotone_path(c: OrderedGraph) -> bool:
    return _edge_set(c) == {(i, i + 1) for i in range(c.n - 1)}


def _is_left_broom(c: OrderedGraph) -> bool:
    edges = _edge_set(c)
    return c.n > 0 and any(
        edges
        == {(i, i + 1) for i in range(hub)}
        | {(hub, j) for j in range(hub + 1, c.n)}
        for hub in range(c.n)
    )


def _is_clique(c: OrderedGraph) -> bool:
    return c.edge_count == c.n * (c.n - 1) // 2


def _is_left_bristle(c: OrderedGraph) -> bool:
    if c.n <= 2:
        return False
    middle = full_mask(c.n - 1) & ~1
    last = c.n - 1
    return (
        c.adj[0] == middle
        and c.adj[last] & ~middle == 0
        and c.adj[last].bit_count() == 1
        and c.edge_count == c.n - 1
    )


def _is_crossed_left_star(c: OrderedGraph) -> bool:
    return c.n > 2 and c.adj[0] == full_mask(c.n) & ~1 and c.edge_count == c.n


def _is_left_split(c: OrderedGraph) -> bool:
    if c.n < 2 or c.adjacent(0, 1):
        return False
    rest = full_mask(c.n) & ~0b11
    for i in bits(rest):
        if c.adj[i] & rest != rest & ~(1 << i):
            return False
        if (c.adj[i] & 0b11).bit_count() > 1:
            return False
    return True


def _left_flags(c: OrderedGraph) -> dict[str, bool]:
    return {
        "star": _is_left_star(c),
        "spike": _is_left_spike(c),
        "broom": _is_left_broom(c),
        "bristle": _is_left_bristle(c),
        "crossed_star": _is_crossed_left_star(c),
        "split": _is_left_split(c),
    }


def tags_of(c: OrderedGraph) -> PatternTags:
    """Tags of a connected ordered graph on positions 0..n-1."""
    left = _left_flags(c)
    right = _left_flags(reverse_order(c))
    return PatternTags(
        vertex_count=c.n,
        left_star=left["star"],
        right_star=right["star"],
        left_spike=left["spike"],
        right_spike=right["spike"],
        monotone_path=_is_monotone_path(c),
        left_broom=left["broom"],
        right_broom=right["broom"],
        clique=_is_clique(c),
        left_bristle=left["bristle"],
        right_bristle=right["bristle"],
        crossed_left_star=left["crossed_star"],
        crossed_right_star=right["crossed_star"],
        left_split=left["split"],
        right_split=right["split"],
        single_vertex=c.n == 1,
    )


def classify_component(
    b: OrderedGraph, component: Iterable[int]
) -> PatternTags:
    positions = tuple(sorted(set(component)))
    if positions not in b.components():
        raise NotAComponent(
            f"{[p + 1 for p in positions]} is not a component of the graph"
        )
    return tags_of(b.induced(positions))


def component_tags(b: OrderedGraph) -> list[PatternTags]:
    return [tags_of(b.induced(component)) for component in b.components()]


def transversals(graphs: Sequence[OrderedGraph]) -> list[tuple[int, ...]]:
    """Every choice of one component index per graph, in product order."""
    return list(
        itertools.product(*(range(len(g.components())) for g in graphs))
    )


@unique
class Template(StrEnum):
    CLIQUES = "T-CLIQUES"
    STARS = "T-STARS"
    BRISTLE = "T-BRISTLE"
    STARTRI = "T-STARTRI"
    SPLIT = "T-SPLIT"


def _some(
    tagsets: Sequence[PatternTags], test: Callable[[PatternTags], bool]
) -> bool:
    return any(test(tags) for tags in tagsets)


def _cliques(tagsets: Sequence[PatternTags]) -> bool:
    return _some(tagsets, lambda x: x.left_star or x.right_star) and _some(
        tagsets, lambda x: x.clique
    )


def _stars(tagsets: Sequence[PatternTags]) -> bool:
    return (
        _some(tagsets, lambda x: x.left_star)
        and _some(tagsets, lambda x: x.right_broom)
    ) or (
        _some(tagsets, lambda x: x.right_star)
        and _some(tagsets, lambda x: x.left_broom)
    )


def _bristle(tagsets: Sequence[PatternTags]) -> bool:
    return (
        _some(tagsets, lambda x: x.left_two_star)
        and _some(tagsets, lambda x: x.right_bristle)
    ) or (
        _some(tagsets, lambda x: x.right_two_star)
        and _some(tagsets, lambda x: x.left_bristle)
    )


def _startri(tagsets: Sequence[PatternTags]) -> bool:
    return (
        _some(tagsets, lambda x: x.monotone_path and x.vertex_count == 3)
        and _some(tagsets, lambda x: x.crossed_left_star)
        and _some(tagsets, lambda x: x.crossed_right_star)
    )


def _split(tagsets: Sequence[PatternTags]) -> bool:
    return (
        _some(tagsets, lambda x: x.left_two_star)
        and _some(tagsets, lambda x: x.crossed_right_star)
        and _some(tagsets, lambda x: x.left_split)
    ) or (
        _some(tagsets, lambda x: x.right_two_star)
        and _some(tagsets, lambda x: x.crossed_left_star)
        and _some(tagsets, lambda x: x.right_split)
    )


TEMPLATE_RULES: dict[Template, Callable[[Sequence[PatternTags]], bool]] = {
    Template.CLIQUES: _cliques,
    Template.STARS: _stars,
    Template.BRISTLE: _bristle,
    Template.STARTRI: _startri,
    Template.SPLIT: _split,
}


@cache
def _match(tagsets: tuple[PatternTags, ...]) -> Optional[Template]:
    for template, rule in TEMPLATE_RULES.items():
        if rule(tagsets):
            return template
    return None


def match_template(tagsets: Sequence[PatternTags]) -> Optional[Template]:
    """The first template, in declaration order, the tag records satisfy."""
    return _match(tuple(tagsets))


@dataclass(kw_only=True)
class Certificate:
    numberings: list[Numbering] = field(default_factory=list)
    graphs: list[OrderedGraph] = field(default_factory=list)
    assignment: dict[tuple[int, ...], Template] = field(default_factory=dict)


@dataclass(frozen=True)
class _Candidate:
    numbering: Numbering
    graph: OrderedGraph
    tags: tuple[PatternTags, ...]


def _candidates(t: Tournament) -> list[_Candidate]:
    seen_graphs: set[OrderedGraph] = set()
    seen_signatures: set[frozenset[PatternTags]] = set()
    pool: list[_Candidate] = []
    for numbering in itertools.permutations(range(t.n)):
        graph = backedge_graph(t, numbering)
        if graph in seen_graphs:
            continue
        seen_graphs.add(graph)
        tags = tuple(component_tags(graph))
        if not all(tag.recognized for tag in tags):
            continue
        # only the distinct component tags decide template membership
        signature = frozenset(tags)
        if signature in seen_signatures:
            continue
        seen_signatures.add(signature)
        pool.append(_Candidate(numbering, graph, tags))
    return pool


def _assign(
    subset: Sequence[_Candidate],
) -> Optional[dict[tuple[int, ...], Template]]:
    assignment: dict[tuple[int, ...], Template] = {}
    for transversal in itertools.product(
        *(range(len(candidate.tags)) for candidate in subset)
    ):
        template = _match(
            tuple(
                candidate.tags[index]
                for candidate, index in zip(subset, transversal)
            )
        )
        if template is None:
            return None
        assignment[transversal] = template
    return assignment


def find_srseh_certificate(
    t: Tournament, *, budget: int = DEFAULT_CERTIFICATE_BUDGET
) -> Optional[Certificate]:
    """Up to three backedge graphs whose every transversal fits a template.

    Returns None when the search is complete; raises BudgetExhausted when
    more than budget subsets would be examined.
    """
    if t.n > MAX_CERTIFICATE_VERTICES:
        raise TooLarge(
            f"certificate search needs at most {MAX_CERTIFICATE_VERTICES}"
            f" vertices, got {t.n}"
        )
    pool = _candidates(t)
    logger.debug("%d candidate backedge graphs", len(pool))
    examined = 0
    for size in range(1, MAX_SUBSET_SIZE + 1):
        for subset in itertools.combinations(pool, size):
            examined += 1
            if examined > budget:
                raise BudgetExhausted(
                    f"examined {budget} subsets of {len(pool)} candidates"
                )
            assignment = _assign(subset)
            if assignment is not None:
                return Certificate(
                    numberings=[c.numbering for c in subset],
                    graphs=[c.graph for c in subset],
                    assignment=assignment,
                )
    return None


def certificate_problems(t: Tournament, certificate: Certificate) -> list[str]:
    """Re-derives a certificate from scratch; an empty list means valid."""
    problems: list[str] = []
    if len(certificate.numberings) != len(certificate.graphs):
        return ["numberings and graphs differ in number"]
    tag_lists: list[list[PatternTags]] = []
    for numbering, graph in zip(certificate.numberings, certificate.graphs):
        derived = backedge_graph(t, numbering)
        if derived != graph:
            problems.append(f"graph of numbering {numbering} differs")
        tag_lists.append(component_tags(derived))
    expected = set(itertools.product(*(range(len(x)) for x in tag_lists)))
    if set(certificate.assignment) != expected:
        problems.append("assignment does not cover exactly the transversals")
    for transversal, template in certificate.assignment.items():
        if transversal not in expected:
            continue
        chosen = [tags[i] for tags, i in zip(tag_lists, transversal)]
        if not TEMPLATE_RULES[template](chosen):
            problems.append(f"transversal {transversal} fails {template}")
    return problems


def verify_certificate(t: Tournament, certificate: Certificate) -> bool:
    return not certificate_problems(t, certificate)
