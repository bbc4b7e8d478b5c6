"""The symmetry group of the square lattice: D4 acting linearly, then a translation."""

from dataclasses import dataclass

from .geometry import Edge, Point, edge
from .patch import GraphPatch

__all__ = [
    'D4',
    'D4_NAMES',
    'Transform',
    'IDENTITY',
    'apply_symmetry',
]

# (a, b, c, d) acts as (x, y) -> (a*x + b*y, c*x + d*y); rotations first, then reflections
D4: tuple[tuple[int, int, int, int], ...] = (
    (1, 0, 0, 1),
    (0, -1, 1, 0),
    (-1, 0, 0, -1),
    (0, 1, -1, 0),
    (1, 0, 0, -1),
    (0, 1, 1, 0),
    (-1, 0, 0, 1),
    (0, -1, -1, 0),
)
D4_NAMES: tuple[str, ...] = (
    'id',
    'rot90',
    'rot180',
    'rot270',
    'flip-x',
    'flip-diag',
    'flip-y',
    'flip-anti',
)

_INDEX = {m: i for i, m in enumerate(D4)}


def _mul(m: tuple[int, int, int, int], n: tuple[int, int, int, int]) -> int:
    a, b, c, d = m
    e, f, g, h = n
    return _INDEX[(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)]


@dataclass(frozen=True, slots=True, order=True)
class Transform:
    """``p -> D4[linear] @ p + shift``."""

    linear: int = 0
    shift: Point = (0, 0)

    def apply_point(self, p: Point) -> Point:
        a, b, c, d = D4[self.linear]
        x, y = p
        return (a * x + b * y + self.shift[0], c * x + d * y + self.shift[1])

    def apply_edge(self, e: Edge) -> Edge:
        return edge(self.apply_point(e[0]), self.apply_point(e[1]))

    def compose(self, other: 'Transform') -> 'Transform':
        """``self ∘ other``: apply ``other`` first."""
        a, b, c, d = D4[self.linear]
        sx, sy = other.shift
        return Transform(
            _mul(D4[self.linear], D4[other.linear]),
            (a * sx + b * sy + self.shift[0], c * sx + d * sy + self.shift[1]),
        )

    def inverse(self) -> 'Transform':
        a, b, c, d = D4[self.linear]
        # orthogonal, so the inverse is the transpose
        inv = _INDEX[(a, c, b, d)]
        sx, sy = self.shift
        return Transform(inv, (-(a * sx + c * sy), -(b * sx + d * sy)))

    @property
    def name(self) -> str:
        return f"{D4_NAMES[self.linear]}+{self.shift}"


IDENTITY = Transform()


def apply_symmetry(T: Transform, S: GraphPatch) -> GraphPatch:
    return GraphPatch(frozenset(T.apply_edge(e) for e in S.edges))
