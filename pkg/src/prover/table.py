"""Incremental classification of the scanned close pairs.

Extending S can only remove admissible paths, so a child inherits its
parent's table and re-filters only the pairs whose paths touch the new edges.
Pairs that become scanned are classified by filtering the paths admissible in
the empty graph, memoized on the translated local neighbourhood they depend on.
"""

import functools
import itertools
from collections.abc import Iterable
from dataclasses import dataclass

from dilation import pair_dilation_ok
from exact import DILATION, leq_scaled_sqrt
from lattice import (
    CLOSE_OFFSETS,
    EMPTY,
    Box,
    Edge,
    GraphPatch,
    Point,
    is_diagonal,
    octile,
    opposite_diagonal,
)
from paths import CaseTag, ClosePair, PathCandidate, classify_pair, enumerate_admissible, path_fits

from .config import Heuristic

__all__ = [
    'PairTable',
    'dependency_box',
    'classification_cache_info',
]

type _Paths = tuple[PathCandidate, ...]


@functools.cache
def dependency_box(offset: Point) -> Box:
    """Points whose edges can influence the pair ``(0, 0)``-``offset``.

    Every vertex of a qualifying path lies in the octile ellipse around the pair;
    its edges and any crossing diagonal stay within one more step.
    """
    n = offset[0] ** 2 + offset[1] ** 2
    inside = [
        (x, y)
        for x in range(-6, 9)
        for y in range(-6, 9)
        if leq_scaled_sqrt(octile((0, 0), (x, y)) + octile((x, y), offset), DILATION, n)
    ]
    box = Box.around(inside)
    assert box is not None
    return box.inflate(1)


@functools.cache
def _base_paths(offset: Point) -> _Paths:
    return tuple(enumerate_admissible(EMPTY, ClosePair((0, 0), offset)))


@functools.lru_cache(maxsize=1 << 18)
def _classify_local(offset: Point, local: frozenset[Edge]) -> _Paths | None:
    S = GraphPatch(local)
    if pair_dilation_ok(S, (0, 0), offset):
        return None
    # admissible(S) is the subset of admissible(∅) whose fresh edges fit S
    return tuple(p for p in _base_paths(offset) if path_fits(S, p))


def classification_cache_info() -> tuple[int, int]:
    info = _classify_local.cache_info()
    return info.hits, info.misses


def _shift_edge(e: Edge, dx: int, dy: int) -> Edge:
    (a, b), (c, d) = e
    return ((a + dx, b + dy), (c + dx, d + dy))


def _classify(S: GraphPatch, pair: ClosePair) -> _Paths | None:
    """Admissible paths of an unsatisfied pair, ``None`` once satisfied."""
    if S.long_edges:
        case = classify_pair(S, pair)
        return None if case.tag is CaseTag.SATISFACTION else case.paths
    (px, py), (qx, qy) = pair.p, pair.q
    offset = (qx - px, qy - py)
    box = dependency_box(offset)
    local = frozenset(
        f
        for f in (_shift_edge(e, -px, -py) for e in S.edges)
        if box.contains(f[0]) and box.contains(f[1])
    )
    paths = _classify_local(offset, local)
    if paths is None:
        return None
    return tuple(
        PathCandidate(tuple((x + px, y + py) for x, y in path.vertices), path.length)
        for path in paths
    )


def _paths_box(paths: _Paths) -> Box:
    box = Box.around(itertools.chain.from_iterable(p.vertices for p in paths))
    assert box is not None
    return box.inflate(1)


@dataclass(frozen=True)
class _Entry:
    paths: _Paths
    box: Box


def _entry(paths: _Paths) -> _Entry:
    return _Entry(paths, _paths_box(paths) if paths else Box(0, 0, -1, -1))


def _ball(centre: Point, radius: int) -> Iterable[Point]:
    x, y = centre
    for dx in range(-radius, radius + 1):
        for dy in range(-radius, radius + 1):
            yield (x + dx, y + dy)


def _box_distance(box: Box, p: Point) -> int:
    x, y = p
    return max(box.xmin - x, x - box.xmax, box.ymin - y, y - box.ymax, 0)


def _refilter(
    S: GraphPatch, paths: _Paths, touched: set[Point], blocked: list[Edge]
) -> _Paths | None:
    """Paths still admissible in ``S``, ``None`` when one of them already lies in S."""
    kept = []
    for p in paths:
        vs = p.vertices
        # a path away from every new vertex keeps its degrees and crossings
        # unless it may use the opposite diagonal of a new one
        if touched.isdisjoint(vs) and not any(a in vs and b in vs for a, b in blocked):
            kept.append(p)
            continue
        if not path_fits(S, p):
            continue
        if all(e in S.edges for e in p.edges()):
            return None
        kept.append(p)
    return tuple(kept)


@dataclass(frozen=True)
class PairTable:
    """Unsatisfied pairs among those with an endpoint within ``radius`` of a vertex of S.

    ``core`` is the bounding box of the starting edges; the nearest heuristic
    ranks pairs by their Chebyshev distance to it.
    """

    radius: int
    scanned: frozenset[Point]
    entries: dict[ClosePair, _Entry]
    core: Box | None = None

    @classmethod
    def build(cls, S: GraphPatch, radius: int, core: Box | None = None) -> 'PairTable':
        empty = cls(radius, frozenset(), {}, core)
        return empty.advance(S, S.sorted_edges())

    def __len__(self) -> int:
        return len(self.entries)

    def distance(self, pair: ClosePair) -> int:
        if self.core is None:
            return 0
        return min(_box_distance(self.core, pair.p), _box_distance(self.core, pair.q))

    def advance(self, S: GraphPatch, new_edges: list[Edge]) -> 'PairTable':
        """The table for ``S``, which extends this table's edge set by ``new_edges``."""
        entries = dict(self.entries)
        touched = {x for e in new_edges for x in e}
        blocked = [opposite_diagonal(e) for e in new_edges if is_diagonal(e)]
        for pair, entry in self.entries.items():
            if not any(entry.box.contains(x) for x in touched):
                continue
            kept = _refilter(S, entry.paths, touched, blocked)
            if kept is None:
                del entries[pair]
            elif len(kept) != len(entry.paths):
                entries[pair] = _entry(kept)

        fresh: set[Point] = set()
        for v in touched:
            fresh.update(x for x in _ball(v, self.radius) if x not in self.scanned)
        scanned = self.scanned | fresh
        for p in sorted(fresh):
            for dx, dy in CLOSE_OFFSETS:
                q = (p[0] + dx, p[1] + dy)
                if q in self.scanned or (q in fresh and q < p):
                    continue
                pair = ClosePair(p, q).canonical()
                paths = _classify(S, pair)
                if paths is not None:
                    entries[pair] = _entry(paths)
        return PairTable(self.radius, scanned, entries, self.core)

    def contradiction(self) -> ClosePair | None:
        return min((pair for pair, e in self.entries.items() if not e.paths), default=None)

    def deduction(self) -> tuple[ClosePair, PathCandidate] | None:
        """The forced pair nearest to the core, ties broken by the pair itself."""
        pair = min(
            (pair for pair, e in self.entries.items() if len(e.paths) == 1),
            key=lambda pr: (self.distance(pr), pr),
            default=None,
        )
        if pair is None:
            return None
        return pair, self.entries[pair].paths[0]

    def branching(self, heuristic: Heuristic) -> tuple[ClosePair, _Paths] | None:
        if not self.entries:
            return None
        match heuristic:
            case Heuristic.LEX:
                pair = min(self.entries)
            case Heuristic.FAIL_FIRST:
                pair = min(self.entries, key=lambda pr: (len(self.entries[pr].paths), pr))
            case Heuristic.NEAREST:
                pair = min(
                    self.entries,
                    key=lambda pr: (self.distance(pr), len(self.entries[pr].paths), pr),
                )
        return pair, self.entries[pair].paths
