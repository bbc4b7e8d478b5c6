"""Built-in forbidden configurations and pattern search under lattice symmetries."""

from com.exceptions import PreconditionError, UnknownPatternError

from .geometry import Box, Point, offset
from .patch import GraphPatch
from .symmetry import Transform

__all__ = [
    'H1',
    'H2',
    'UNIT_EDGE',
    'DIAGONAL_EDGE',
    'PATTERNS',
    'get_pattern',
    'pattern_diameter',
    'find_pattern',
]

# five-cycle with two unit sides
H1 = GraphPatch.of(
    [
        ((0, 0), (-1, 0)),
        ((-1, 0), (0, 1)),
        ((0, 1), (1, 0)),
        ((1, 0), (1, -1)),
        ((1, -1), (0, 0)),
    ]
)

# long strokes split into unit edges
H2 = GraphPatch.of(
    [
        ((-1, 2), (0, 2)),
        ((0, 2), (1, 2)),
        ((-1, 0), (-1, 1)),
        ((-1, 1), (-1, 2)),
        ((-1, 0), (0, 0)),
        ((0, 0), (1, 0)),
        ((1, 0), (0, 1)),
        ((0, 1), (1, 1)),
        ((1, 1), (0, 2)),
    ]
)

UNIT_EDGE = GraphPatch.of([((0, 0), (1, 0))])
DIAGONAL_EDGE = GraphPatch.of([((0, 0), (1, 1))])

PATTERNS: dict[str, GraphPatch] = {
    'h1': H1,
    'h2': H2,
    'unit': UNIT_EDGE,
    'diagonal': DIAGONAL_EDGE,
}


def get_pattern(pattern_id: str) -> GraphPatch:
    try:
        return PATTERNS[pattern_id.lower()]
    except KeyError:
        raise UnknownPatternError(
            f"unknown pattern {pattern_id!r}, expected one of {sorted(PATTERNS)}"
        ) from None


def pattern_diameter(P: GraphPatch) -> int:
    box = P.bbox()
    if box is None:
        return 0
    return max(box.xmax - box.xmin, box.ymax - box.ymin)


def find_pattern(S: GraphPatch, P: GraphPatch, window: Box | None = None) -> list[Transform]:
    """Every transform ``T`` with ``T(P) ⊆ S`` whose translation lies in ``window``.

    The window defaults to the bounding box of ``S`` grown by the diameter of ``P``.
    """
    if not P.edges:
        raise PreconditionError("pattern must have at least one edge")
    if window is None:
        box = S.bbox()
        if box is None:
            return []
        window = box.inflate(pattern_diameter(P))

    found: set[Transform] = set()
    for linear in range(8):
        image = sorted(Transform(linear).apply_edge(e) for e in P.edges)
        anchor = image[0]
        shape = offset(*anchor)
        for f in S.edges:
            if offset(*f) != shape:
                continue
            shift: Point = (f[0][0] - anchor[0][0], f[0][1] - anchor[0][1])
            if not window.contains(shift):
                continue
            candidate = Transform(linear, shift)
            if all(candidate.apply_edge(e) in S.edges for e in P.edges):
                found.add(candidate)
    return sorted(found)
