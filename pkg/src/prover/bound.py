"""Detecting that every completion of S is already too short between u and v."""

from dataclasses import dataclass

from dilation import dijkstra
from exact import DILATION, Zr2, scaled_sqrt_lt
from lattice import CLOSE_NORMS, GraphPatch, Point, norm_sq

__all__ = [
    'BoundWitness',
    'detect_bound_violation',
]


@dataclass(frozen=True)
class BoundWitness:
    """``path`` runs inside S from the ``side`` endpoint to ``shortcut``."""

    side: str
    path: tuple[Point, ...]
    shortcut: Point
    length: Zr2


def detect_bound_violation(S: GraphPatch, u: Point, v: Point, c: Zr2) -> BoundWitness | None:
    """A vertex ``w`` reached inside S at length ``L`` with ``L + (1+√2)|w t| < c``.

    ``t`` is the opposite endpoint, and ``w`` must be ``t`` itself or close to it,
    because only close pairs are guaranteed the ``(1+√2)`` bound. Vertices are
    tried in order of distance, then coordinates.
    """
    for side, src, dst in (('u', u, v), ('v', v, u)):
        dist, parent = dijkstra(S, src, cutoff=c)
        for d, w in sorted((d, w) for w, d in dist.items()):
            n = norm_sq(w, dst)
            if w != dst and n not in CLOSE_NORMS:
                continue
            if scaled_sqrt_lt(DILATION, n, c - d):
                path = [w]
                while path[-1] != src:
                    path.append(parent[path[-1]])
                return BoundWitness(side, tuple(path[::-1]), w, d)
    return None
