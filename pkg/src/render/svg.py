"""Deterministic SVG drawings of edge sets and proof annotations."""

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from lattice import Edge, GraphPatch, Point, Transform, get_pattern

from .state import (
    Annotation,
    BoundWitness,
    PairHighlight,
    PathHighlight,
    PatternHighlight,
    ProofState,
    state_patch,
)
from .templates import jinja_env

__all__ = [
    'SCALE',
    'PADDING',
    'COLOURS',
    'render_svg',
    'render_state',
]

# pixels per lattice unit
SCALE = 40
PADDING = 2

COLOURS = {
    'contradiction': '#e02020',
    'deduction': '#3cd81d',
    'pattern': '#9623c8',
    'bound': '#ff4be6',
}


@dataclass
class _Overlay:
    kind: str
    colour: str
    lines: list[tuple[int, int, int, int, str]] = field(default_factory=list)
    marks: list[tuple[int, int, str]] = field(default_factory=list)


def _px(p: Point) -> tuple[int, int]:
    # SVG y grows downwards
    return p[0] * SCALE, -p[1] * SCALE


def _line(a: Point, b: Point, extra: str = '') -> tuple[int, int, int, int, str]:
    return (*_px(a), *_px(b), extra)


def _mark(p: Point, label: str = '') -> tuple[int, int, str]:
    return (*_px(p), label)


def _path_lines(vertices: Sequence[Point]) -> list[tuple[int, int, int, int, str]]:
    return [_line(a, b) for a, b in zip(vertices, vertices[1:])]


def _overlay(annotation: Annotation) -> tuple[_Overlay, list[Point]]:
    match annotation:
        case PairHighlight(p=p, q=q):
            o = _Overlay('contradiction', COLOURS['contradiction'], [_line(p, q)])
            o.marks = [_mark(p), _mark(q)]
            return o, [p, q]
        case PathHighlight(vertices=vs):
            o = _Overlay('deduction', COLOURS['deduction'], _path_lines(vs))
            o.marks = [_mark(vs[0]), _mark(vs[-1])] if vs else []
            return o, list(vs)
        case PatternHighlight(pattern=pid, linear=linear, shift=shift):
            T = Transform(linear, shift)
            edges: list[Edge] = sorted(T.apply_edge(e) for e in get_pattern(pid).edges)
            o = _Overlay('pattern', COLOURS['pattern'], [_line(a, b) for a, b in edges])
            return o, [x for e in edges for x in e]
        case BoundWitness(u=u, v=v, path=path):
            o = _Overlay('bound', COLOURS['bound'], _path_lines(path))
            if path:
                o.lines.append(_line(path[-1], v, ' shortcut'))
            o.marks = [_mark(u, 'u'), _mark(v, 'v')]
            return o, [u, v, *path]
    raise TypeError(f"unknown annotation {annotation!r}")


def _radius(points: Iterable[Point]) -> int:
    return max((max(abs(x), abs(y)) for x, y in points), default=0) + PADDING


def render_svg(
    S: GraphPatch, annotations: Sequence[Annotation] = (), title: str | None = None
) -> str:
    """An SVG 1.1 document: lattice dots, one ``line.edge`` per edge of ``S``, then overlays.

    The view box is centred on the origin and reaches two units past the farthest
    point drawn; one lattice unit is 40 pixels.
    """
    overlays: list[_Overlay] = []
    points: list[Point] = list(S.vertices())
    for annotation in annotations:
        overlay, extra = _overlay(annotation)
        overlays.append(overlay)
        points.extend(extra)
    r = _radius(points)
    dots = [_px((x, y)) for y in range(r, -r - 1, -1) for x in range(-r, r + 1)]
    edges = [(*_px(p), *_px(q)) for p, q in S.sorted_edges()]
    size = 2 * r * SCALE
    template = jinja_env().get_template('patch.svg.j2')
    return template.render(
        title=title,
        size=size,
        view_box=f"{-r * SCALE} {-r * SCALE} {size} {size}",
        dots=dots,
        edges=edges,
        overlays=overlays,
    )


def render_state(state: ProofState) -> str:
    return render_svg(state_patch(state), state.annotations, state.caption or state.name or None)
