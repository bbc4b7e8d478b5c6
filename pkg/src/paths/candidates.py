"""Shortest-path candidates for knight-move pairs.

In an optimal graph the shortest path between ``u`` and ``v`` with
``|uv| = √5`` either has length at most ``3+√2`` or is, up to symmetry, one of
four short paths. Those four are stored here and re-derived on demand.
"""

import logging

from com.exceptions import PreconditionError
from exact import DILATION, Zr2, leq_scaled_sqrt, sign
from lattice import D4, EMPTY, Point, Transform, norm_sq

from .admissible import enumerate_admissible
from .model import ClosePair, PathCandidate

__all__ = [
    'BOOST_THRESHOLD',
    'KNIGHT_TARGET',
    'STORED_CANDIDATES',
    'canonicalize',
    'subpaths_within_bound',
    'enumerate_shortest_candidates',
]

logger = logging.getLogger(__name__)

# shortest paths between knight-move pairs already known to be at most this long
BOOST_THRESHOLD = Zr2(3, 1)

KNIGHT_TARGET: Point = (1, 2)

STORED_CANDIDATES: tuple[PathCandidate, ...] = (
    PathCandidate.of([(0, 0), (-1, 1), (-1, 2), (0, 3), (1, 2)]),
    PathCandidate.of([(0, 0), (-1, 1), (0, 2), (0, 3), (1, 2)]),
    PathCandidate.of([(0, 0), (-1, 1), (0, 2), (1, 3), (1, 2)]),
    PathCandidate.of([(0, 0), (-1, 0), (-1, 1), (-1, 2), (0, 2), (1, 2)]),
)


def _prefix_lengths(path: PathCandidate) -> list[Zr2]:
    out = [Zr2()]
    for a, b in zip(path.vertices, path.vertices[1:]):
        out.append(out[-1] + PathCandidate.of([a, b]).length)
    return out


def subpaths_within_bound(path: PathCandidate) -> bool:
    """Every pair of vertices is joined along the path within ``(1+√2)`` times their distance."""
    prefix = _prefix_lengths(path)
    vs = path.vertices
    for i in range(len(vs)):
        for j in range(i + 1, len(vs)):
            if not leq_scaled_sqrt(prefix[j] - prefix[i], DILATION, norm_sq(vs[i], vs[j])):
                return False
    return True


def canonicalize(path: PathCandidate) -> PathCandidate:
    """The least image of ``path`` running from ``(0, 0)`` to ``(1, 2)``.

    Both orientations are tried under every point-group element; images whose
    endpoints do not land on the fixed pair are skipped.
    """
    if norm_sq(path.start, path.end) != 5:
        raise PreconditionError(f"path endpoints are not a knight move: {path}")
    best: tuple[Point, ...] | None = None
    for oriented in (path.vertices, path.vertices[::-1]):
        for linear in range(len(D4)):
            g = Transform(linear)
            image = [g.apply_point(x) for x in oriented]
            sx, sy = image[0]
            moved = tuple((x - sx, y - sy) for x, y in image)
            if moved[-1] != KNIGHT_TARGET:
                continue
            if best is None or moved < best:
                best = moved
    assert best is not None
    return PathCandidate(best, path.length)


def enumerate_shortest_candidates(u: Point, v: Point) -> list[PathCandidate]:
    """Canonical classes of possible shortest ``u``-``v`` paths longer than ``3+√2``."""
    if norm_sq(u, v) != 5:
        raise PreconditionError(f"|uv|^2 must be 5, got {norm_sq(u, v)} for {u} and {v}")
    classes: set[PathCandidate] = set()
    total = 0
    for path in enumerate_admissible(EMPTY, ClosePair(u, v)):
        if sign(path.length - BOOST_THRESHOLD) <= 0:
            continue
        total += 1
        if subpaths_within_bound(path):
            classes.add(canonicalize(path))
    result = sorted(classes)
    logger.info("%d long paths, %d candidate classes", total, len(result))
    return result
