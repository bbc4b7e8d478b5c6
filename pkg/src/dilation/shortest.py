"""Exact-weight Dijkstra on lattice graphs."""

import heapq
import math
from collections.abc import Callable, Iterable

from com.exceptions import PreconditionError
from exact import DILATION, ONE, SQRT2, ZERO, Zr2, leq_scaled_sqrt, sign
from lattice import GraphPatch, Point, norm_sq

__all__ = [
    'Neighbours',
    'patch_neighbours',
    'dijkstra',
    'shortest_path_length',
    'shortest_path',
    'dilation_ceiling',
    'pair_dilation_ok',
]

type Neighbours = Callable[[Point], Iterable[tuple[Point, Zr2]]]

_STEP = {1: ONE, 2: SQRT2}


def patch_neighbours(S: GraphPatch) -> Neighbours:
    """Unit and diagonal edges of ``S`` weighted by their length; longer edges are ignored."""

    def neighbours(p: Point) -> Iterable[tuple[Point, Zr2]]:
        for q in S.neighbours(p):
            w = _STEP.get(norm_sq(p, q))
            if w is not None:
                yield q, w

    return neighbours


def _as_neighbours(graph: 'GraphPatch | Neighbours') -> Neighbours:
    if isinstance(graph, GraphPatch):
        return patch_neighbours(graph)
    if hasattr(graph, 'neighbours'):
        return graph.neighbours  # type: ignore[union-attr]
    return graph


def dijkstra(
    graph: 'GraphPatch | Neighbours',
    source: Point,
    cutoff: Zr2 | None = None,
    target: Point | None = None,
) -> tuple[dict[Point, Zr2], dict[Point, Point]]:
    """Settled distances (at most ``cutoff``) from ``source`` and the shortest-path tree.

    Stops early once ``target`` is settled.
    """
    if cutoff is not None and sign(cutoff) < 0:
        raise PreconditionError(f"cutoff must be nonnegative, got {cutoff}")
    neighbours = _as_neighbours(graph)
    dist: dict[Point, Zr2] = {}
    parent: dict[Point, Point] = {}
    best: dict[Point, Zr2] = {source: ZERO}
    heap: list[tuple[Zr2, Point]] = [(ZERO, source)]
    while heap:
        d, p = heapq.heappop(heap)
        if p in dist:
            continue
        dist[p] = d
        if p == target:
            break
        for q, w in neighbours(p):
            if q in dist:
                continue
            nd = d + w
            if cutoff is not None and sign(cutoff - nd) < 0:
                continue
            old = best.get(q)
            if old is None or nd < old:
                best[q] = nd
                parent[q] = p
                heapq.heappush(heap, (nd, q))
    return dist, parent


def shortest_path_length(
    graph: 'GraphPatch | Neighbours', p: Point, q: Point, cutoff: Zr2
) -> Zr2 | None:
    """Exact ``d(p, q)`` when it is at most ``cutoff``, otherwise ``None`` (infinity)."""
    if p == q:
        return ZERO
    dist, _ = dijkstra(graph, p, cutoff, target=q)
    return dist.get(q)


def shortest_path(
    graph: 'GraphPatch | Neighbours', p: Point, q: Point, cutoff: Zr2
) -> list[Point] | None:
    dist, parent = dijkstra(graph, p, cutoff, target=q)
    if q not in dist:
        return None
    path = [q]
    while path[-1] != p:
        path.append(parent[path[-1]])
    return path[::-1]


def dilation_ceiling(n: int) -> Zr2:
    """An element of Z[√2] no smaller than ``(1+√2)·√n``, used as a search cutoff."""
    root = math.isqrt(n)
    if root * root < n:
        root += 1
    return DILATION * root


def pair_dilation_ok(S: 'GraphPatch | Neighbours', p: Point, q: Point) -> bool:
    """Whether ``d_S(p, q) <= (1+√2)|pq|``; the bound is inclusive."""
    if p == q:
        raise PreconditionError(f"pair endpoints coincide at {p}")
    n = norm_sq(p, q)
    d = shortest_path_length(S, p, q, dilation_ceiling(n))
    return d is not None and leq_scaled_sqrt(d, DILATION, n)
