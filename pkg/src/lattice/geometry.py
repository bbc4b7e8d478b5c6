"""Lattice points, edges and exact segment intersection."""

from collections.abc import Iterable
from typing import NamedTuple

from exact import Zr2

__all__ = [
    'Point',
    'Edge',
    'Box',
    'edge',
    'norm_sq',
    'offset',
    'is_short',
    'is_diagonal',
    'chebyshev',
    'orientation',
    'segments_intersect',
    'opposite_diagonal',
    'octile',
    'CLOSE_NORMS',
    'CLOSE_OFFSETS',
]

type Point = tuple[int, int]
type Edge = tuple[Point, Point]


class Box(NamedTuple):
    """Closed axis-aligned box of lattice points."""

    xmin: int
    ymin: int
    xmax: int
    ymax: int

    def contains(self, p: Point) -> bool:
        return self.xmin <= p[0] <= self.xmax and self.ymin <= p[1] <= self.ymax

    def inflate(self, k: int) -> 'Box':
        return Box(self.xmin - k, self.ymin - k, self.xmax + k, self.ymax + k)

    def union(self, other: 'Box') -> 'Box':
        return Box(
            min(self.xmin, other.xmin),
            min(self.ymin, other.ymin),
            max(self.xmax, other.xmax),
            max(self.ymax, other.ymax),
        )

    @classmethod
    def around(cls, points: Iterable[Point]) -> 'Box | None':
        xs: list[int] = []
        ys: list[int] = []
        for x, y in points:
            xs.append(x)
            ys.append(y)
        if not xs:
            return None
        return cls(min(xs), min(ys), max(xs), max(ys))


def edge(p: Point, q: Point) -> Edge:
    """The canonical (sorted) form of the edge between ``p`` and ``q``."""
    if p == q:
        raise ValueError(f"degenerate edge at {p}")
    return (p, q) if p < q else (q, p)


def offset(p: Point, q: Point) -> Point:
    return (q[0] - p[0], q[1] - p[1])


def norm_sq(p: Point, q: Point) -> int:
    dx, dy = q[0] - p[0], q[1] - p[1]
    return dx * dx + dy * dy


def chebyshev(p: Point, q: Point) -> int:
    return max(abs(q[0] - p[0]), abs(q[1] - p[1]))


def is_short(e: Edge) -> bool:
    """Unit or diagonal."""
    return norm_sq(*e) <= 2


def is_diagonal(e: Edge) -> bool:
    return norm_sq(*e) == 2


def opposite_diagonal(e: Edge) -> Edge:
    """The other diagonal of the unit square spanned by a diagonal edge."""
    (x1, y1), (x2, y2) = e
    return edge((x1, y2), (x2, y1))


def orientation(a: Point, b: Point, c: Point) -> int:
    cross = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (cross > 0) - (cross < 0)


def _on_segment(p: Point, a: Point, b: Point) -> bool:
    return (
        orientation(a, b, p) == 0
        and min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    )


def segments_intersect(e1: Edge, e2: Edge) -> bool:
    """True iff the closed segments share a point other than a common endpoint."""
    a, b = e1
    c, d = e2
    if {a, b} == {c, d}:
        return True
    o1, o2 = orientation(a, b, c), orientation(a, b, d)
    if o1 == 0 and o2 == 0:
        # collinear: overlap of positive length
        axis = 0 if a[0] != b[0] else 1
        lo1, hi1 = sorted((a[axis], b[axis]))
        lo2, hi2 = sorted((c[axis], d[axis]))
        return max(lo1, lo2) < min(hi1, hi2)
    for p, (s, t) in ((c, e1), (d, e1), (a, e2), (b, e2)):
        if p != s and p != t and _on_segment(p, s, t):
            return True
    o3, o4 = orientation(c, d, a), orientation(c, d, b)
    return o1 * o2 < 0 and o3 * o4 < 0


def octile(p: Point, q: Point) -> Zr2:
    """Length of the shortest unit/diagonal walk from ``p`` to ``q`` ignoring obstacles."""
    dx, dy = abs(q[0] - p[0]), abs(q[1] - p[1])
    lo, hi = min(dx, dy), max(dx, dy)
    return Zr2(hi - lo, lo)


# squared lengths of close pairs: every lattice distance up to sqrt(5)
CLOSE_NORMS = frozenset({1, 2, 4, 5})

CLOSE_OFFSETS: tuple[Point, ...] = tuple(
    sorted(
        (dx, dy)
        for dx in range(-2, 3)
        for dy in range(-2, 3)
        if dx * dx + dy * dy in CLOSE_NORMS
    )
)
