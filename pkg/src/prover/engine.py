"""Backtracking refutation search producing replayable certificates."""

import concurrent.futures
import logging
import threading
import time
from collections import Counter
from dataclasses import dataclass, field

from msgspec import structs

from cert import (
    ENGINE_VERSION,
    FORMAT_VERSION,
    BoundHitNode,
    BoundSpec,
    BranchChild,
    BranchNode,
    Certificate,
    ContradictionNode,
    DeductionNode,
    Header,
    Pair,
    PatternHitNode,
    ProofNode,
    referenced_points,
)
from com.exceptions import BudgetExceededError, OpenLeafError
from lattice import Box, Edge, GraphPatch, find_pattern, get_pattern, pattern_diameter
from paths import ClosePair, PathCandidate

from .bound import detect_bound_violation
from .config import PROGRESS_INTERVAL, ProverConfig
from .metrics import (
    classification_cache_total,
    nodes_expanded_total,
    terminal_leaves_total,
    track_proof,
)
from .table import PairTable, classification_cache_info

__all__ = [
    'RunSummary',
    'ProofResult',
    'expand',
]

logger = logging.getLogger(__name__)


@dataclass
class RunSummary:
    nodes: int = 0
    max_depth: int = 0
    leaves: dict[str, int] = field(default_factory=dict)
    wall_time: float = 0.0
    cache_hits: int = 0
    cache_misses: int = 0

    @property
    def cache_hit_ratio(self) -> float:
        total = self.cache_hits + self.cache_misses
        return self.cache_hits / total if total else 0.0


@dataclass(frozen=True)
class ProofResult:
    certificate: Certificate
    summary: RunSummary


class _Cancelled(Exception):
    """A sibling search failed; this one stops without a verdict of its own."""


def _pair(pair: ClosePair) -> Pair:
    return Pair(pair.p, pair.q)


def _fresh(S: GraphPatch, path: PathCandidate) -> list[Edge]:
    return [e for e in path.edges() if e not in S.edges]


def _chain(deductions: list[tuple[ClosePair, PathCandidate]], node: ProofNode) -> ProofNode:
    for pair, path in reversed(deductions):
        node = DeductionNode(_pair(pair), list(path.vertices), node)
    return node


@dataclass
class _Open:
    """A branching whose children are still being refuted, in path order."""

    S: GraphPatch
    table: PairTable
    depth: int
    deductions: list[tuple[ClosePair, PathCandidate]]
    pair: ClosePair
    paths: tuple[PathCandidate, ...]
    children: list[BranchChild] = field(default_factory=list)

    def attach(self, node: ProofNode) -> None:
        path = self.paths[len(self.children)]
        self.children.append(BranchChild(list(path.vertices), node))

    @property
    def complete(self) -> bool:
        return len(self.children) == len(self.paths)

    def close(self) -> ProofNode:
        return _chain(self.deductions, BranchNode(_pair(self.pair), self.children))


class _Search:
    def __init__(self, config: ProverConfig):
        self.config = config
        self.settings = config.settings
        self.patterns = [(pid, get_pattern(pid)) for pid in config.patterns]
        self.nodes = 0
        self.max_depth = 0
        self.leaves: Counter[str] = Counter()
        self._lock = threading.Lock()
        self._stop = threading.Event()
        self._start = time.monotonic()

    def _tick(self, depth: int, table: PairTable) -> None:
        if self._stop.is_set():
            raise _Cancelled
        with self._lock:
            self.nodes += 1
            self.max_depth = max(self.max_depth, depth)
            n = self.nodes
        nodes_expanded_total.inc()
        if n > self.settings.budget:
            raise BudgetExceededError(
                f"node budget of {self.settings.budget} exhausted", nodes=self.settings.budget
            )
        if n % PROGRESS_INTERVAL == 0:
            logger.info(
                "nodes=%d depth=%d table=%d elapsed=%.1fs",
                n,
                depth,
                len(table),
                time.monotonic() - self._start,
            )

    def _leaf(self, node: ProofNode) -> ProofNode:
        kind = node.__struct_config__.tag
        with self._lock:
            self.leaves[kind] += 1
        terminal_leaves_total.labels(kind=kind).inc()
        return node

    def _terminal(self, S: GraphPatch, new_edges: list[Edge] | None) -> ProofNode | None:
        bound = self.config.bound
        if bound is not None:
            w = detect_bound_violation(S, bound.u, bound.v, bound.c)
            if w is not None:
                return BoundHitNode(w.side, list(w.path), w.shortcut)  # type: ignore[arg-type]
        touched = None if new_edges is None else Box.around(x for e in new_edges for x in e)
        for pid, P in self.patterns:
            # built-in patterns contain the origin, so a new copy shifts by at most their diameter
            window = None if touched is None else touched.inflate(pattern_diameter(P))
            hits = find_pattern(S, P, window)
            if hits:
                return PatternHitNode(pid, hits[0].linear, hits[0].shift)
        return None

    def resolve(
        self, S: GraphPatch, table: PairTable, new_edges: list[Edge] | None, depth: int
    ) -> ProofNode | _Open:
        """Apply deductions until a leaf is found or a branching is needed."""
        deductions: list[tuple[ClosePair, PathCandidate]] = []
        while True:
            self._tick(depth, table)
            node = self._terminal(S, new_edges)
            if node is None:
                pair = table.contradiction()
                if pair is not None:
                    node = ContradictionNode(_pair(pair))
            if node is not None:
                return _chain(deductions, self._leaf(node))
            forced = table.deduction()
            if forced is not None:
                deductions.append(forced)
                new_edges = _fresh(S, forced[1])
                S = S.with_edges(new_edges)
                table = table.advance(S, new_edges)
                depth += 1
                continue
            choice = table.branching(self.settings.heuristic)
            if choice is None:
                raise OpenLeafError(
                    f"every scanned pair is satisfied at depth {depth} with {len(S)} edges",
                    nodes=self.nodes,
                )
            return _Open(S, table, depth, deductions, *choice)

    def _child(self, frame: _Open, index: int) -> ProofNode | _Open:
        new_edges = _fresh(frame.S, frame.paths[index])
        S = frame.S.with_edges(new_edges)
        return self.resolve(S, frame.table.advance(S, new_edges), new_edges, frame.depth + 1)

    def descend(self, step: ProofNode | _Open) -> ProofNode:
        """Finish a subtree depth first, keeping open branchings on an explicit stack."""
        stack: list[_Open] = []
        while True:
            if isinstance(step, _Open):
                stack.append(step)
                step = self._child(step, 0)
                continue
            if not stack:
                return step
            frame = stack[-1]
            frame.attach(step)
            if frame.complete:
                stack.pop()
                step = frame.close()
            else:
                step = self._child(frame, len(frame.children))

    def _guarded(self, frame: _Open, index: int) -> ProofNode:
        try:
            return self.descend(self._child(frame, index))
        except BaseException:
            self._stop.set()
            raise

    def run(self, S: GraphPatch, table: PairTable) -> ProofNode:
        step = self.resolve(S, table, None, 0)
        if not isinstance(step, _Open) or self.settings.threads == 1:
            return self.descend(step)
        with concurrent.futures.ThreadPoolExecutor(
            max_workers=self.settings.threads, thread_name_prefix='prover'
        ) as pool:
            futures = [pool.submit(self._guarded, step, i) for i in range(len(step.paths))]
            concurrent.futures.wait(futures)
        errors = [f.exception() for f in futures if f.exception() is not None]
        real = [e for e in errors if not isinstance(e, _Cancelled)]
        if real:
            raise real[0]
        # children are listed in path order whatever order they finished in
        for f in futures:
            step.attach(f.result())
        return step.close()


def _header_bounds(cert: Certificate) -> tuple[int, int, int, int]:
    box = Box.around(tuple(p) for p in referenced_points(cert))
    return (0, 0, 0, 0) if box is None else tuple(box)  # type: ignore[return-value]


def expand(config: ProverConfig) -> ProofResult:
    """Refute ``config.s0`` or raise an :class:`InconclusiveError`.

    The returned certificate lists, for every node, the justification a checker
    needs to replay it. Running out of budget is never a refutation.
    """
    search = _Search(config)
    settings = config.settings
    hits0, misses0 = classification_cache_info()
    start = time.monotonic()
    logger.info(
        "search: %d starting edges, patterns=%s, bound=%s",
        len(config.s0),
        list(config.patterns),
        config.bound,
    )
    with track_proof():
        core = Box.around(x for e in config.s0.edges for x in e)
        table = PairTable.build(config.s0, settings.scan_radius, core)
        root = search.run(config.s0, table)
    hits1, misses1 = classification_cache_info()
    summary = RunSummary(
        nodes=search.nodes,
        max_depth=search.max_depth,
        leaves=dict(sorted(search.leaves.items())),
        wall_time=time.monotonic() - start,
        cache_hits=hits1 - hits0,
        cache_misses=misses1 - misses0,
    )
    classification_cache_total.labels(result='hit').inc(summary.cache_hits)
    classification_cache_total.labels(result='miss').inc(summary.cache_misses)

    bound = config.bound
    cert = Certificate(
        header=Header(
            format_version=FORMAT_VERSION,
            engine_version=ENGINE_VERSION,
            heuristic=settings.heuristic.value,
            scan_radius=settings.scan_radius,
            bounds=(0, 0, 0, 0),
        ),
        s0=config.s0.sorted_edges(),
        patterns=list(config.patterns),
        bound=None if bound is None else BoundSpec(bound.u, bound.v, bound.c.pair()),
        root=root,
    )
    cert = structs.replace(cert, header=structs.replace(cert.header, bounds=_header_bounds(cert)))
    logger.info(
        "refuted in %d nodes (max depth %d, %.2fs)",
        summary.nodes,
        summary.max_depth,
        summary.wall_time,
    )
    return ProofResult(cert, summary)
