"""Finite plane geometric graphs on the integer lattice."""

import logging
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from types import MappingProxyType

from com.exceptions import InvalidPatchError

from .geometry import (
    Box,
    Edge,
    Point,
    edge,
    is_diagonal,
    is_short,
    opposite_diagonal,
    segments_intersect,
)

__all__ = [
    'GraphPatch',
    'EMPTY',
    'is_valid_partial',
    'parse_edge_list',
    'format_edge_list',
    'MAX_DEGREE',
]

logger = logging.getLogger(__name__)

MAX_DEGREE = 3


@dataclass(frozen=True)
class GraphPatch:
    """An immutable finite edge set with its degree map.

    Extending a patch returns a new one; the original is never modified, so
    patches can be shared freely between threads.
    """

    edges: frozenset[Edge]
    degree: Mapping[Point, int] = field(init=False, repr=False, compare=False)
    adjacency: Mapping[Point, frozenset[Point]] = field(init=False, repr=False, compare=False)
    long_edges: tuple[Edge, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        adj: dict[Point, set[Point]] = {}
        for p, q in self.edges:
            adj.setdefault(p, set()).add(q)
            adj.setdefault(q, set()).add(p)
        object.__setattr__(
            self, 'adjacency', MappingProxyType({p: frozenset(n) for p, n in adj.items()})
        )
        object.__setattr__(self, 'degree', MappingProxyType({p: len(n) for p, n in adj.items()}))
        object.__setattr__(
            self, 'long_edges', tuple(sorted(e for e in self.edges if not is_short(e)))
        )

    @classmethod
    def of(cls, edges: Iterable[tuple[Point, Point]]) -> 'GraphPatch':
        return cls(frozenset(edge(p, q) for p, q in edges))

    @classmethod
    def from_path(cls, vertices: Iterable[Point]) -> 'GraphPatch':
        vs = list(vertices)
        return cls.of(zip(vs, vs[1:]))

    def with_edges(self, extra: Iterable[Edge]) -> 'GraphPatch':
        new = self.edges.union(extra)
        if len(new) == len(self.edges):
            return self
        return GraphPatch(new)

    def __len__(self) -> int:
        return len(self.edges)

    def __contains__(self, e: object) -> bool:
        return e in self.edges

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def vertices(self) -> list[Point]:
        return sorted(self.degree)

    def deg(self, p: Point) -> int:
        return self.degree.get(p, 0)

    def neighbours(self, p: Point) -> frozenset[Point]:
        return self.adjacency.get(p, frozenset())

    def has_edge(self, p: Point, q: Point) -> bool:
        return q in self.adjacency.get(p, ())

    def bbox(self) -> Box | None:
        return Box.around(self.degree)

    def crosses(self, e: Edge) -> bool:
        """Whether adding ``e`` (not already present) would break planarity."""
        if is_short(e):
            if is_diagonal(e) and opposite_diagonal(e) in self.edges:
                return True
            others: Iterable[Edge] = self.long_edges
        else:
            others = self.edges
        return any(segments_intersect(e, f) for f in others if f != e)


EMPTY = GraphPatch(frozenset())


def is_valid_partial(S: GraphPatch) -> bool:
    """Max degree at most three and no two edges intersect."""
    if any(d > MAX_DEGREE for d in S.degree.values()):
        return False
    for e in S.edges:
        if is_diagonal(e) and opposite_diagonal(e) in S.edges:
            return False
    long_edges = S.long_edges
    for i, e in enumerate(long_edges):
        if any(segments_intersect(e, f) for f in long_edges[i + 1 :]):
            return False
        if any(segments_intersect(e, f) for f in S.edges if is_short(f)):
            return False
    return True


def parse_edge_list(text: str) -> GraphPatch:
    """Parse ``x1 y1 x2 y2`` lines; ``#`` starts a comment, blank lines are skipped."""
    edges: list[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 4:
            raise InvalidPatchError(f"line {lineno}: expected 'x1 y1 x2 y2', got {raw.strip()!r}")
        try:
            x1, y1, x2, y2 = map(int, parts)
            edges.append(edge((x1, y1), (x2, y2)))
        except ValueError as e:
            raise InvalidPatchError(f"line {lineno}: {e}") from e
    logger.debug("parsed %d edges", len(edges))
    return GraphPatch(frozenset(edges))


def format_edge_list(S: GraphPatch) -> str:
    return ''.join(f"{p[0]} {p[1]} {q[0]} {q[1]}\n" for p, q in S.sorted_edges())
