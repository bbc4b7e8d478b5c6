"""The concrete refutations: forbidden subgraphs, the knight-move boost and
bounded corroboration that optimal graphs only use short edges."""

import logging
from dataclasses import dataclass, field

from com.exceptions import (
    DataDriftError,
    InconclusiveError,
    PreconditionError,
    UnknownPatternError,
)
from lattice import GraphPatch, get_pattern
from paths import KNIGHT_TARGET, STORED_CANDIDATES, enumerate_shortest_candidates

from .config import BoundConstraint, ProverConfig, SearchSettings
from .engine import ProofResult, expand

__all__ = [
    'FORBIDDEN_STAGES',
    'prove_forbidden',
    'prove_boost',
    'EdgeClassResult',
    'CorroborationReport',
    'long_edge_classes',
    'corroborate_short_edges',
]

logger = logging.getLogger(__name__)

# H1 is refuted on its own; H2 relies on H1 already being excluded
FORBIDDEN_STAGES: dict[str, tuple[str, ...]] = {
    'h1': (),
    'h2': ('h1',),
}


def prove_forbidden(pattern_id: str, settings: SearchSettings | None = None) -> ProofResult:
    key = pattern_id.lower()
    if key not in FORBIDDEN_STAGES:
        raise UnknownPatternError(
            f"unknown forbidden pattern {pattern_id!r}, expected one of {sorted(FORBIDDEN_STAGES)}"
        )
    config = ProverConfig(
        s0=get_pattern(key),
        patterns=FORBIDDEN_STAGES[key],
        settings=settings or SearchSettings(),
    )
    logger.info("proving %s is forbidden", key)
    return expand(config)


def prove_boost(settings: SearchSettings | None = None) -> list[ProofResult]:
    """Refute each stored knight-move path class as a too-long shortest path."""
    fresh = enumerate_shortest_candidates((0, 0), KNIGHT_TARGET)
    if set(fresh) != set(STORED_CANDIDATES):
        raise DataDriftError(
            f"fresh enumeration found {len(fresh)} classes that differ from the stored "
            f"{len(STORED_CANDIDATES)}: {[str(p) for p in fresh]}"
        )
    results = []
    for i, path in enumerate(STORED_CANDIDATES, start=1):
        config = ProverConfig(
            s0=GraphPatch.from_path(path.vertices),
            patterns=tuple(FORBIDDEN_STAGES),
            bound=BoundConstraint(path.start, path.end, path.length),
            settings=settings or SearchSettings(),
        )
        logger.info("boost case P%d: %s (c = %s)", i, path, path.length)
        results.append(expand(config))
    return results


@dataclass(frozen=True)
class EdgeClassResult:
    edge: tuple[int, int]
    norm_sq: int
    refuted: bool
    nodes: int
    reason: str = ''
    result: ProofResult | None = field(default=None, repr=False)


@dataclass(frozen=True)
class CorroborationReport:
    max_norm_sq: int
    classes: list[EdgeClassResult]

    @property
    def ok(self) -> bool:
        return all(c.refuted for c in self.classes)


def long_edge_classes(max_norm_sq: int) -> list[tuple[int, int]]:
    """Edge directions ``(i, j)`` with ``i >= j >= 0`` and ``2 < i²+j² <= max_norm_sq``.

    Every longer edge is one of these up to the lattice symmetries.
    """
    out = []
    i = 1
    while i * i <= max_norm_sq:
        for j in range(i + 1):
            if 2 < i * i + j * j <= max_norm_sq:
                out.append((i, j))
        i += 1
    return sorted(out, key=lambda ij: (ij[0] ** 2 + ij[1] ** 2, ij))


def corroborate_short_edges(
    max_norm_sq: int, settings: SearchSettings | None = None
) -> CorroborationReport:
    """Try to refute a single edge of each long class; inconclusive classes are reported."""
    if max_norm_sq < 4:
        raise PreconditionError(f"max_norm_sq must be at least 4, got {max_norm_sq}")
    classes = []
    for i, j in long_edge_classes(max_norm_sq):
        config = ProverConfig(
            s0=GraphPatch.of([((0, 0), (i, j))]), settings=settings or SearchSettings()
        )
        try:
            result = expand(config)
        except InconclusiveError as e:
            logger.warning("edge (0,0)-(%d,%d) inconclusive: %s", i, j, e)
            classes.append(EdgeClassResult((i, j), i * i + j * j, False, e.nodes, str(e)))
            continue
        classes.append(
            EdgeClassResult(
                (i, j), i * i + j * j, True, result.summary.nodes, result=result
            )
        )
    return CorroborationReport(max_norm_sq, classes)
