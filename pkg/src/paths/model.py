"""Close pairs, candidate paths and pair classifications."""

from dataclasses import dataclass, field
from enum import StrEnum

from com.exceptions import PreconditionError
from exact import ONE, SQRT2, ZERO, Zr2
from lattice import CLOSE_NORMS, CLOSE_OFFSETS, Edge, Point, edge, norm_sq

__all__ = [
    'ClosePair',
    'PathCandidate',
    'CaseTag',
    'PairCase',
    'close_pair_offsets',
    'parse_path',
    'format_path',
    'parse_point',
    'format_point',
]

_STEP = {1: ONE, 2: SQRT2}


def close_pair_offsets() -> list[Point]:
    """The 20 nonzero offsets of squared length 1, 2, 4 or 5."""
    return list(CLOSE_OFFSETS)


@dataclass(frozen=True, slots=True, order=True)
class ClosePair:
    p: Point
    q: Point

    def __post_init__(self):
        if norm_sq(self.p, self.q) not in CLOSE_NORMS:
            raise PreconditionError(f"{self.p} and {self.q} are not a close pair")

    @property
    def norm_sq(self) -> int:
        return norm_sq(self.p, self.q)

    def canonical(self) -> 'ClosePair':
        return self if self.p < self.q else ClosePair(self.q, self.p)

    def reversed(self) -> 'ClosePair':
        return ClosePair(self.q, self.p)

    def __str__(self) -> str:
        return f"{format_point(self.p)}-{format_point(self.q)}"


@dataclass(frozen=True, slots=True, order=True)
class PathCandidate:
    """A simple walk of unit and diagonal steps together with its exact length."""

    vertices: tuple[Point, ...]
    length: Zr2 = field(default=ZERO, compare=False)

    @classmethod
    def of(cls, vertices: 'tuple[Point, ...] | list[Point]') -> 'PathCandidate':
        vs = tuple(vertices)
        if len(vs) < 2:
            raise PreconditionError("a path needs at least two vertices")
        if len(set(vs)) != len(vs):
            raise PreconditionError(f"path revisits a vertex: {format_path(vs)}")
        total = ZERO
        for a, b in zip(vs, vs[1:]):
            step = _STEP.get(norm_sq(a, b))
            if step is None:
                raise PreconditionError(f"{a} -> {b} is not a unit or diagonal step")
            total += step
        return cls(vs, total)

    @property
    def start(self) -> Point:
        return self.vertices[0]

    @property
    def end(self) -> Point:
        return self.vertices[-1]

    def edges(self) -> list[Edge]:
        return [edge(a, b) for a, b in zip(self.vertices, self.vertices[1:])]

    def reversed(self) -> 'PathCandidate':
        return PathCandidate(self.vertices[::-1], self.length)

    def __str__(self) -> str:
        return format_path(self.vertices)


class CaseTag(StrEnum):
    CONTRADICTION = 'contradiction'
    SATISFACTION = 'satisfaction'
    DEDUCTION = 'deduction'
    EXPLORATION = 'exploration'


@dataclass(frozen=True)
class PairCase:
    """The classification of one close pair against a partial edge set.

    ``paths`` is empty for contradictions and satisfactions, holds the unique
    admissible path for a deduction and every admissible path for an exploration.
    """

    tag: CaseTag
    pair: ClosePair
    paths: tuple[PathCandidate, ...] = ()

    @property
    def path(self) -> PathCandidate:
        if self.tag is not CaseTag.DEDUCTION:
            raise ValueError(f"{self.tag} carries no single path")
        return self.paths[0]


def format_point(p: Point) -> str:
    return f"{p[0]},{p[1]}"


def parse_point(text: str) -> Point:
    try:
        x, y = text.split(',')
        return int(x), int(y)
    except ValueError as e:
        raise ValueError(f"expected 'x,y', got {text!r}") from e


def parse_path(text: str) -> tuple[Point, ...]:
    """Parse a whitespace separated ``x,y`` vertex list."""
    return tuple(parse_point(tok) for tok in text.split())


def format_path(vertices: 'tuple[Point, ...] | list[Point]') -> str:
    return ' '.join(format_point(p) for p in vertices)
