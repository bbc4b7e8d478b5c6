from dataclasses import dataclass, field
from enum import StrEnum

from com.exceptions import InvalidPatchError, PreconditionError
from exact import Zr2, sign
from lattice import GraphPatch, Point, get_pattern, is_valid_partial

__all__ = [
    'Heuristic',
    'DEFAULT_BUDGET',
    'DEFAULT_SCAN_RADIUS',
    'PROGRESS_INTERVAL',
    'BoundConstraint',
    'SearchSettings',
    'ProverConfig',
]

DEFAULT_BUDGET = 10_000_000
DEFAULT_SCAN_RADIUS = 2
PROGRESS_INTERVAL = 10_000


class Heuristic(StrEnum):
    """How the branching pair is chosen among the unresolved ones.

    ``nearest``: fewest paths among the pairs closest to the starting edges.
    ``fail-first``: fewest paths anywhere in the scanned region.
    ``lex``: smallest pair.
    """

    NEAREST = 'nearest'
    FAIL_FIRST = 'fail-first'
    LEX = 'lex'


@dataclass(frozen=True)
class BoundConstraint:
    u: Point
    v: Point
    c: Zr2

    def __post_init__(self):
        if self.u == self.v:
            raise PreconditionError(f"bound endpoints coincide at {self.u}")
        if sign(self.c) <= 0:
            raise PreconditionError(f"bound constant must be positive, got {self.c}")


@dataclass(frozen=True)
class SearchSettings:
    budget: int = DEFAULT_BUDGET
    scan_radius: int = DEFAULT_SCAN_RADIUS
    heuristic: Heuristic = Heuristic.NEAREST
    threads: int = 1

    def __post_init__(self):
        if self.budget < 1:
            raise PreconditionError(f"budget must be positive, got {self.budget}")
        if self.scan_radius < 0:
            raise PreconditionError(f"scan radius must be nonnegative, got {self.scan_radius}")
        if self.threads < 1:
            raise PreconditionError(f"threads must be positive, got {self.threads}")


@dataclass(frozen=True)
class ProverConfig:
    """Starting edges, forbidden pattern ids and an optional distance lower bound."""

    s0: GraphPatch
    patterns: tuple[str, ...] = ()
    bound: BoundConstraint | None = None
    settings: SearchSettings = field(default_factory=SearchSettings)

    def __post_init__(self):
        if not is_valid_partial(self.s0):
            raise InvalidPatchError("starting edge set must be plane with maximum degree 3")
        for pattern in self.patterns:
            get_pattern(pattern)
        object.__setattr__(self, 'patterns', tuple(sorted(set(self.patterns))))
