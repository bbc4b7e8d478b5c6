"""S-admissible paths between close pairs and the four-way pair classification."""

import logging
import math

from dilation import pair_dilation_ok
from exact import DILATION, ONE, SQRT2, ZERO, Zr2, leq_scaled_sqrt
from lattice import (
    MAX_DEGREE,
    Edge,
    GraphPatch,
    Point,
    edge,
    is_diagonal,
    norm_sq,
    octile,
    opposite_diagonal,
)

from .model import CaseTag, ClosePair, PairCase, PathCandidate

__all__ = [
    'STEPS',
    'enumerate_admissible',
    'path_fits',
    'long_edge_may_connect',
    'classify_pair',
]

logger = logging.getLogger(__name__)

STEPS: tuple[tuple[Point, Zr2], ...] = tuple(
    ((dx, dy), SQRT2 if dx and dy else ONE)
    for dx in (-1, 0, 1)
    for dy in (-1, 0, 1)
    if dx or dy
)


def enumerate_admissible(S: GraphPatch, pair: ClosePair) -> list[PathCandidate]:
    """Every simple path from ``pair.p`` to ``pair.q`` admissible for ``S``, sorted.

    A path is admissible when its length is at most ``(1+√2)|pq|`` and adding its
    edges to ``S`` keeps the graph plane with maximum degree three. Edges already
    in ``S`` may be reused freely.
    """
    p, q = pair.p, pair.q
    n = norm_sq(p, q)
    found: list[PathCandidate] = []
    vertices: list[Point] = [p]
    on_path: set[Point] = {p}
    new_edges: set[Edge] = set()
    extra: dict[Point, int] = {}

    def fits(x: Point) -> bool:
        return S.deg(x) + extra.get(x, 0) < MAX_DEGREE

    def extend(x: Point, length: Zr2) -> None:
        for (dx, dy), w in STEPS:
            y = (x[0] + dx, x[1] + dy)
            if y in on_path:
                continue
            total = length + w
            if not leq_scaled_sqrt(total + octile(y, q), DILATION, n):
                continue
            e = edge(x, y)
            fresh = e not in S.edges
            if fresh:
                if not (fits(x) and fits(y)):
                    continue
                if S.crosses(e):
                    continue
                if w == SQRT2 and opposite_diagonal(e) in new_edges:
                    continue
            vertices.append(y)
            if y == q:
                found.append(PathCandidate(tuple(vertices), total))
                vertices.pop()
                continue
            on_path.add(y)
            if fresh:
                new_edges.add(e)
                extra[x] = extra.get(x, 0) + 1
                extra[y] = extra.get(y, 0) + 1
            extend(y, total)
            if fresh:
                new_edges.discard(e)
                extra[x] -= 1
                extra[y] -= 1
            on_path.discard(y)
            vertices.pop()

    extend(p, ZERO)
    found.sort()
    return found


def path_fits(S: GraphPatch, path: PathCandidate) -> bool:
    """Whether adding the edges of ``path`` to ``S`` keeps it plane with maximum degree three."""
    fresh = [e for e in path.edges() if e not in S.edges]
    extra: dict[Point, int] = {}
    for e in fresh:
        if S.crosses(e):
            return False
        if is_diagonal(e) and opposite_diagonal(e) in fresh:
            return False
        for x in e:
            extra[x] = extra.get(x, 0) + 1
    return all(S.deg(x) + k <= MAX_DEGREE for x, k in extra.items())


def long_edge_may_connect(S: GraphPatch, pair: ClosePair) -> bool:
    """Whether some long edge of ``S`` could lie on a path meeting the pair's bound.

    The long edge is charged ``isqrt`` of its squared length, which never exceeds
    its true length, so a ``False`` answer is exact.
    """
    if not S.long_edges:
        return False
    p, q = pair.p, pair.q
    n = norm_sq(p, q)
    for a, b in S.long_edges:
        chord = Zr2(math.isqrt(norm_sq(a, b)), 0)
        for s, t in ((a, b), (b, a)):
            if leq_scaled_sqrt(octile(p, s) + chord + octile(t, q), DILATION, n):
                return True
    return False


def classify_pair(S: GraphPatch, pair: ClosePair) -> PairCase:
    """Satisfaction if ``S`` alone meets the bound, otherwise by the admissible path count."""
    if pair_dilation_ok(S, pair.p, pair.q) or long_edge_may_connect(S, pair):
        return PairCase(CaseTag.SATISFACTION, pair)
    paths = enumerate_admissible(S, pair)
    if not paths:
        return PairCase(CaseTag.CONTRADICTION, pair)
    if len(paths) == 1:
        return PairCase(CaseTag.DEDUCTION, pair, (paths[0],))
    return PairCase(CaseTag.EXPLORATION, pair, tuple(paths))
