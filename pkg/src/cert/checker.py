"""Independent replay of a certificate, one node at a time.

Each node is re-verified from the edge set it applies to using only the path
enumeration and exact arithmetic; the proof search is never re-run.
"""

import concurrent.futures
import logging
from collections import Counter
from dataclasses import dataclass, field

from com.exceptions import LatticeSpannerError
from exact import DILATION, Zr2, scaled_sqrt_lt, sign
from lattice import (
    CLOSE_NORMS,
    D4,
    Box,
    GraphPatch,
    Point,
    Transform,
    edge,
    get_pattern,
    is_valid_partial,
    norm_sq,
)
from paths import CaseTag, ClosePair, PathCandidate, classify_pair

from .codec import canonical_problems, referenced_points
from .model import (
    BoundHitNode,
    BranchNode,
    Certificate,
    ContradictionNode,
    DeductionNode,
    Pair,
    PathT,
    PatternHitNode,
    ProofNode,
)

__all__ = [
    'NodeFailure',
    'CheckReport',
    'check_certificate',
]

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class NodeFailure:
    where: str
    message: str


@dataclass(frozen=True)
class CheckReport:
    valid: bool
    nodes_checked: int
    failures: list[NodeFailure]
    leaves: dict[str, int] = field(default_factory=dict)


@dataclass(frozen=True)
class _Context:
    patterns: frozenset[str]
    bound: tuple[Point, Point, Zr2] | None


type _Task = tuple[str, GraphPatch, ProofNode]


def _pair(pair: Pair) -> ClosePair:
    return ClosePair(tuple(pair.p), tuple(pair.q))


def _extend(S: GraphPatch, path: PathT) -> GraphPatch:
    return S.with_edges(edge(tuple(a), tuple(b)) for a, b in zip(path, path[1:]))


def _check_bound_hit(S: GraphPatch, node: BoundHitNode, ctx: _Context) -> str | None:
    if ctx.bound is None:
        return "bound hit without a bound constraint"
    u, v, c = ctx.bound
    src, dst = (u, v) if node.side == 'u' else (v, u)
    path = [tuple(x) for x in node.path]
    if not path or path[0] != src:
        return f"witness path must start at {src}"
    if path[-1] != tuple(node.shortcut):
        return "witness path must end at the shortcut vertex"
    for a, b in zip(path, path[1:]):
        if not S.has_edge(a, b):
            return f"witness path uses {a}-{b}, which is not in S"
    length = PathCandidate.of(path).length if len(path) > 1 else Zr2()
    w = path[-1]
    n = norm_sq(w, dst)
    if w != dst and n not in CLOSE_NORMS:
        return f"shortcut {w} is not close to {dst}"
    if not scaled_sqrt_lt(DILATION, n, c - length):
        return f"{length} + (1+√2)·√{n} is not below {c}"
    return None


def _check_node(
    S: GraphPatch, where: str, node: ProofNode, ctx: _Context
) -> tuple[str | None, list[_Task]]:
    match node:
        case ContradictionNode(pair=pair):
            case = classify_pair(S, _pair(pair))
            if case.tag is not CaseTag.CONTRADICTION:
                return f"pair {case.pair} is a {case.tag}, not a contradiction", []
            return None, []
        case PatternHitNode(pattern=pattern, linear=linear, shift=shift):
            if pattern not in ctx.patterns:
                return f"pattern {pattern!r} is not forbidden by this certificate", []
            if not 0 <= linear < len(D4):
                return f"no point-group element {linear}", []
            T = Transform(linear, tuple(shift))
            missing = [e for e in get_pattern(pattern).sorted_edges() if T.apply_edge(e) not in S]
            if missing:
                return f"image of {missing[0]} under {T.name} is not in S", []
            return None, []
        case BoundHitNode():
            return _check_bound_hit(S, node, ctx), []
        case DeductionNode(pair=pair, path=path, child=child):
            case = classify_pair(S, _pair(pair))
            if case.tag is not CaseTag.DEDUCTION:
                return f"pair {case.pair} is a {case.tag}, not a deduction", []
            if case.path.vertices != tuple(tuple(x) for x in path):
                return f"the only admissible path is {case.path}", []
            return None, [(f"{where}/deduction", _extend(S, path), child)]
        case BranchNode(pair=pair, children=children):
            case = classify_pair(S, _pair(pair))
            if case.tag is not CaseTag.EXPLORATION:
                return f"pair {case.pair} is a {case.tag}, not a branching pair", []
            recorded = [tuple(tuple(x) for x in child.path) for child in children]
            expected = [p.vertices for p in case.paths]
            if sorted(recorded) != expected:
                lost = len(set(expected) - set(recorded))
                extra = len(set(recorded) - set(expected))
                return f"case split differs: {lost} path(s) missing, {extra} unexpected", []
            return None, [
                (f"{where}/branch[{i}]", _extend(S, child.path), child.node)
                for i, child in enumerate(children)
            ]
    return f"unknown node {type(node).__name__}", []


def _safe_check(
    S: GraphPatch, where: str, node: ProofNode, ctx: _Context
) -> tuple[str | None, list[_Task]]:
    try:
        return _check_node(S, where, node, ctx)
    except (LatticeSpannerError, ValueError) as e:
        return str(e), []


def _kind(node: ProofNode) -> str:
    return node.__struct_config__.tag


def _check_subtree(task: _Task, ctx: _Context) -> tuple[int, list[NodeFailure], Counter[str]]:
    failures: list[NodeFailure] = []
    leaves: Counter[str] = Counter()
    count = 0
    stack = [task]
    while stack:
        where, S, node = stack.pop()
        count += 1
        message, children = _safe_check(S, where, node, ctx)
        if message is not None:
            failures.append(NodeFailure(where, message))
        if not children and message is None:
            leaves[_kind(node)] += 1
        stack.extend(reversed(children))
    return count, failures, leaves


def _check_header(cert: Certificate) -> tuple[list[NodeFailure], _Context | None, GraphPatch]:
    failures = [NodeFailure(where, msg) for where, msg in canonical_problems(cert)]
    box = Box(*cert.header.bounds)
    outside = next((p for p in referenced_points(cert) if not box.contains(tuple(p))), None)
    if outside is not None:
        failures.append(NodeFailure('header', f"point {tuple(outside)} lies outside {box}"))

    s0 = GraphPatch.of((tuple(p), tuple(q)) for p, q in cert.s0)
    if not is_valid_partial(s0):
        failures.append(NodeFailure('s0', "starting edge set is not a valid partial graph"))
    for pattern in cert.patterns:
        try:
            get_pattern(pattern)
        except LatticeSpannerError as e:
            failures.append(NodeFailure('patterns', str(e)))

    bound = None
    if cert.bound is not None:
        u, v = tuple(cert.bound.u), tuple(cert.bound.v)
        c = Zr2(*cert.bound.c)
        if u == v or sign(c) <= 0:
            failures.append(NodeFailure('bound', "bound needs distinct endpoints and c > 0"))
        bound = (u, v, c)
    if failures:
        return failures, None, s0
    return failures, _Context(frozenset(cert.patterns), bound), s0


def check_certificate(cert: Certificate, threads: int = 1) -> CheckReport:
    """Replay every node; valid iff all pass and every leaf is terminal."""
    failures, ctx, s0 = _check_header(cert)
    if ctx is None:
        return CheckReport(False, 0, sorted(failures))

    count, root_failures, leaves = 0, [], Counter[str]()
    message, tasks = _safe_check(s0, 'root', cert.root, ctx)
    count += 1
    if message is not None:
        root_failures.append(NodeFailure('root', message))
    elif not tasks:
        leaves[_kind(cert.root)] += 1

    if threads > 1 and len(tasks) > 1:
        with concurrent.futures.ThreadPoolExecutor(
            max_workers=threads, thread_name_prefix='cert-check'
        ) as pool:
            results = list(pool.map(lambda t: _check_subtree(t, ctx), tasks))
    else:
        results = [_check_subtree(t, ctx) for t in tasks]
    for n, fs, ls in results:
        count += n
        root_failures.extend(fs)
        leaves.update(ls)

    failures = sorted(failures + root_failures)
    report = CheckReport(not failures, count, failures, dict(sorted(leaves.items())))
    logger.info(
        "checked %d nodes: %s", count, "valid" if report.valid else f"{len(failures)} failure(s)"
    )
    return report
