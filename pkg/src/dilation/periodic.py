"""Local optimality of periodic (and almost periodic) lattice graphs.

A periodic graph is described by two period vectors and the edges of one
fundamental block. Because every pair that matters is a close pair and every
qualifying path between a close pair is shorter than 5.5, the infinite graph
is certified by checking the close pairs anchored in one fundamental domain
on a finite window.
"""

import concurrent.futures
import itertools
import logging
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from pathlib import Path

from com.exceptions import InvalidSpecError, PreconditionError
from exact import DILATION, ONE, SQRT2, Zr2, leq_scaled_sqrt
from lattice import (
    CLOSE_OFFSETS,
    MAX_DEGREE,
    Box,
    Edge,
    Point,
    chebyshev,
    edge,
    is_diagonal,
    is_short,
    norm_sq,
    octile,
    opposite_diagonal,
)

from .shortest import dilation_ceiling, shortest_path_length

__all__ = [
    'VariantBlock',
    'PeriodicSpec',
    'PeriodLattice',
    'PeriodicReport',
    'TightnessReport',
    'ENVELOPE_RADIUS',
    'BUILTIN_SPECS',
    'parse_periodic_spec',
    'load_periodic_spec',
    'verify_periodic_local_optimality',
    'unit_neighbour_tightness',
]

logger = logging.getLogger(__name__)

DATA_DIR = Path(__file__).parent / 'data'

BUILTIN_SPECS: dict[str, str] = {
    'fig2-left': 'fig2_left.txt',
    'fig2-middle': 'fig2_middle.txt',
    'fig2-right': 'fig2_right.txt',
    'fig3': 'fig3.txt',
}

# Chebyshev radius materialized around the fundamental domain
ENVELOPE_RADIUS = 8

_WEIGHT = {1: ONE, 2: SQRT2}

# vertices on a qualifying path stay within Chebyshev distance 5 of the anchor; the
# slack covers the extent of one variant site
_SITE_REACH = 8


@dataclass(frozen=True)
class VariantBlock:
    """Two alternative edge sets for one site; coordinates are relative to ``anchor``."""

    anchor: Point
    a_edges: tuple[Edge, ...]
    b_edges: tuple[Edge, ...]

    def choice(self, which: int, shift: Point = (0, 0)) -> tuple[Edge, ...]:
        ax, ay = self.anchor[0] + shift[0], self.anchor[1] + shift[1]
        chosen = self.a_edges if which == 0 else self.b_edges
        return tuple(edge((p[0] + ax, p[1] + ay), (q[0] + ax, q[1] + ay)) for p, q in chosen)


@dataclass(frozen=True)
class PeriodicSpec:
    name: str
    t1: Point
    t2: Point
    edges: tuple[Edge, ...]
    variants: tuple[VariantBlock, ...] = ()


def _egcd(x: int, y: int) -> tuple[int, int, int]:
    u0, v0, u1, v1 = 1, 0, 0, 1
    while y:
        k = x // y
        x, y = y, x - k * y
        u0, u1 = u1, u0 - k * u1
        v0, v1 = v1, v0 - k * v1
    if x < 0:
        return -x, -u0, -v0
    return x, u0, v0


@dataclass(frozen=True)
class PeriodLattice:
    """The period lattice in lower triangular form, spanned by ``(a, 0)`` and ``(b, c)``.

    The form depends only on the lattice, not on the chosen period vectors.
    """

    a: int
    b: int
    c: int

    @classmethod
    def from_vectors(cls, t1: Point, t2: Point) -> 'PeriodLattice':
        (x1, y1), (x2, y2) = t1, t2
        det = x1 * y2 - x2 * y1
        if det == 0:
            raise InvalidSpecError(f"period vectors {t1} and {t2} are linearly dependent")
        g, u, v = _egcd(y1, y2)
        a = abs(det) // g
        return cls(a, (u * x1 + v * x2) % a, g)

    @property
    def index(self) -> int:
        return self.a * self.c

    def reduce(self, p: Point) -> Point:
        k = p[1] // self.c
        return ((p[0] - k * self.b) % self.a, p[1] - k * self.c)

    def reps(self) -> list[Point]:
        return [(x, y) for y in range(self.c) for x in range(self.a)]

    def vectors_in(self, box: Box) -> Iterator[Point]:
        for j in range(box.ymin // self.c - 1, box.ymax // self.c + 2):
            x0 = j * self.b
            for i in range((box.xmin - x0) // self.a - 1, (box.xmax - x0) // self.a + 2):
                v = (i * self.a + x0, j * self.c)
                if box.contains(v):
                    yield v


@dataclass(frozen=True)
class PeriodicReport:
    name: str
    ok: bool
    index: int
    max_degree: int
    pairs_checked: int
    assignments_checked: int
    failure: tuple[Point, Point] | None = None
    failure_assignment: tuple[tuple[Point, int], ...] = ()


@dataclass(frozen=True)
class TightnessReport:
    name: str
    ok: bool
    witnesses: dict[Point, Point] = field(default_factory=dict)
    missing: tuple[Point, ...] = ()


# === Parsing ===


def _edges_from_ints(values: Sequence[int], lineno: int) -> tuple[Edge, ...]:
    if len(values) % 4:
        raise InvalidSpecError("edge coordinates must come in groups of four", lineno)
    out = []
    for i in range(0, len(values), 4):
        x1, y1, x2, y2 = values[i : i + 4]
        try:
            out.append(edge((x1, y1), (x2, y2)))
        except ValueError as e:
            raise InvalidSpecError(str(e), lineno) from e
    return tuple(out)


def _ints(tokens: Sequence[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError as e:
        raise InvalidSpecError(f"expected integers: {e}", lineno) from e


def parse_periodic_spec(text: str, name: str = 'spec') -> PeriodicSpec:
    """Parse ``period t1x t1y t2x t2y``, edge lines and ``variant ax ay { A | B }`` lines."""
    period: tuple[Point, Point] | None = None
    edges: list[Edge] = []
    variants: list[VariantBlock] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head == 'period':
            t = _ints(rest, lineno)
            if len(t) != 4:
                raise InvalidSpecError("period needs four integers", lineno)
            period = ((t[0], t[1]), (t[2], t[3]))
        elif head == 'variant':
            body = line[len('variant') :]
            if body.count('{') != 1 or body.count('}') != 1 or body.count('|') != 1:
                raise InvalidSpecError("variant must look like 'variant x y { A | B }'", lineno)
            anchor_text, block = body.split('{')
            anchor = _ints(anchor_text.split(), lineno)
            if len(anchor) != 2:
                raise InvalidSpecError("variant anchor needs two integers", lineno)
            a_text, b_text = block.rstrip().rstrip('}').split('|')
            if not a_text.split() or not b_text.split():
                raise InvalidSpecError("both variant choices need at least one edge", lineno)
            variants.append(
                VariantBlock(
                    (anchor[0], anchor[1]),
                    _edges_from_ints(_ints(a_text.split(), lineno), lineno),
                    _edges_from_ints(_ints(b_text.split(), lineno), lineno),
                )
            )
        else:
            edges.extend(_edges_from_ints(_ints(line.split(), lineno), lineno))
    if period is None:
        raise InvalidSpecError("missing 'period' line")
    return PeriodicSpec(name, period[0], period[1], tuple(edges), tuple(variants))


def load_periodic_spec(source: str | Path) -> PeriodicSpec:
    """Load a built-in spec by name (``fig2-left``, ...) or a spec file by path."""
    if isinstance(source, str) and source in BUILTIN_SPECS:
        path = DATA_DIR / BUILTIN_SPECS[source]
        return parse_periodic_spec(path.read_text(), name=source)
    path = Path(source)
    return parse_periodic_spec(path.read_text(), name=path.stem)


# === Materialization ===


@dataclass
class _Window:
    lattice: PeriodLattice
    reps: list[Point]
    base: frozenset[Edge]
    adjacency: dict[Point, list[tuple[Point, Zr2]]]
    # (site translation, variant index) -> the two edge choices
    sites: dict[tuple[Point, int], tuple[tuple[Edge, ...], tuple[Edge, ...]]]


def _template_box(spec: PeriodicSpec) -> Box:
    points = [p for e in spec.edges for p in e]
    for v in spec.variants:
        for e in v.a_edges + v.b_edges:
            for x, y in e:
                points.append((x + v.anchor[0], y + v.anchor[1]))
    return Box.around(points) or Box(0, 0, 0, 0)


def _materialize(spec: PeriodicSpec) -> _Window:
    for e in spec.edges + tuple(e for v in spec.variants for e in v.a_edges + v.b_edges):
        if not is_short(e):
            raise InvalidSpecError(f"edge {e} is neither a unit nor a diagonal edge")
    lattice = PeriodLattice.from_vectors(spec.t1, spec.t2)
    reps = lattice.reps()
    window = Box(0, 0, lattice.a - 1, lattice.c - 1).inflate(ENVELOPE_RADIUS + 2)
    tb = _template_box(spec)
    shifts = list(
        lattice.vectors_in(
            Box(
                window.xmin - tb.xmax,
                window.ymin - tb.ymax,
                window.xmax - tb.xmin,
                window.ymax - tb.ymin,
            )
        )
    )
    base: set[Edge] = set()
    for sx, sy in shifts:
        for p, q in spec.edges:
            e = edge((p[0] + sx, p[1] + sy), (q[0] + sx, q[1] + sy))
            if window.contains(e[0]) or window.contains(e[1]):
                base.add(e)
    adjacency: dict[Point, list[tuple[Point, Zr2]]] = {}
    for p, q in sorted(base):
        w = _WEIGHT[norm_sq(p, q)]
        adjacency.setdefault(p, []).append((q, w))
        adjacency.setdefault(q, []).append((p, w))
    sites = {
        (s, i): (v.choice(0, s), v.choice(1, s))
        for s in shifts
        for i, v in enumerate(spec.variants)
    }
    return _Window(lattice, reps, frozenset(base), adjacency, sites)


def _check_structure(spec: PeriodicSpec, win: _Window) -> int:
    rep_set = set(win.reps)
    degree: dict[Point, int] = {p: 0 for p in rep_set}
    for p, q in win.base:
        if p in degree:
            degree[p] += 1
        if q in degree:
            degree[q] += 1
    for a_edges, b_edges in win.sites.values():
        # either choice may be taken, so count the larger contribution
        for p in rep_set:
            extra = max(
                sum(p in e for e in a_edges),
                sum(p in e for e in b_edges),
            )
            degree[p] += extra
    max_degree = max(degree.values(), default=0)
    if max_degree > MAX_DEGREE:
        worst = min(p for p, d in degree.items() if d == max_degree)
        raise InvalidSpecError(f"{spec.name}: vertex {worst} has degree {max_degree}")

    owners: dict[Edge, set[tuple[Point, int]]] = {}
    for key, choices in win.sites.items():
        for c in choices:
            for e in c:
                owners.setdefault(e, set()).add(key)
    for e in win.base:
        if is_diagonal(e) and (e[0] in rep_set or e[1] in rep_set):
            opp = opposite_diagonal(e)
            if opp in win.base or opp in owners:
                raise InvalidSpecError(f"{spec.name}: edges {e} and {opp} cross")
    for key, choices in win.sites.items():
        for own in choices:
            for e in own:
                if not is_diagonal(e) or not (e[0] in rep_set or e[1] in rep_set):
                    continue
                opp = opposite_diagonal(e)
                # the sibling choice of the same site is never present together with this one
                if opp in own or owners.get(opp, set()) - {key}:
                    raise InvalidSpecError(f"{spec.name}: variant edge {e} crosses {opp}")
    return max_degree


# === Verification ===


def _in_envelope(x: Point, p: Point, q: Point, n: int) -> bool:
    return leq_scaled_sqrt(octile(p, x) + octile(x, q), DILATION, n)


def _check_anchor(
    win: _Window, p: Point
) -> tuple[int, int, tuple[Point, Point] | None, tuple[tuple[Point, int], ...]]:
    pairs = assignments = 0
    for d in CLOSE_OFFSETS:
        q = (p[0] + d[0], p[1] + d[1])
        n = norm_sq(p, q)
        relevant = sorted(
            key
            for key, choices in win.sites.items()
            if chebyshev(choices[0][0][0], p) <= _SITE_REACH
            and any(
                _in_envelope(e[0], p, q, n) and _in_envelope(e[1], p, q, n)
                for c in choices
                for e in c
            )
        )
        pairs += 1
        for assignment in itertools.product((0, 1), repeat=len(relevant)):
            assignments += 1
            extra: dict[Point, list[tuple[Point, Zr2]]] = {}
            for key, which in zip(relevant, assignment):
                for a, b in win.sites[key][which]:
                    w = _WEIGHT[norm_sq(a, b)]
                    extra.setdefault(a, []).append((b, w))
                    extra.setdefault(b, []).append((a, w))

            def neighbours(x: Point, extra=extra):
                yield from win.adjacency.get(x, ())
                yield from extra.get(x, ())

            dist = shortest_path_length(neighbours, p, q, dilation_ceiling(n))
            if dist is None or not leq_scaled_sqrt(dist, DILATION, n):
                chosen = tuple((key[0], which) for key, which in zip(relevant, assignment))
                return pairs, assignments, (p, q), chosen
    return pairs, assignments, None, ()


def verify_periodic_local_optimality(spec: PeriodicSpec, threads: int = 1) -> PeriodicReport:
    """Check degree, planarity and every close pair anchored in one fundamental domain.

    Raises ``InvalidSpecError`` for structural problems; a dilation failure is
    reported with the offending pair.
    """
    win = _materialize(spec)
    max_degree = _check_structure(spec, win)
    logger.info(
        "verifying %s: %d anchors, %d variant sites in window",
        spec.name,
        len(win.reps),
        len(win.sites),
    )
    if threads > 1:
        with concurrent.futures.ThreadPoolExecutor(
            max_workers=threads, thread_name_prefix=f'{spec.name}.verify'
        ) as pool:
            results = list(pool.map(lambda p: _check_anchor(win, p), win.reps))
    else:
        results = [_check_anchor(win, p) for p in win.reps]

    failures = sorted((r[2], r[3]) for r in results if r[2] is not None)
    failure, failure_assignment = failures[0] if failures else (None, ())
    report = PeriodicReport(
        name=spec.name,
        ok=failure is None,
        index=win.lattice.index,
        max_degree=max_degree,
        pairs_checked=sum(r[0] for r in results),
        assignments_checked=sum(r[1] for r in results),
        failure=failure,
        failure_assignment=failure_assignment,
    )
    if not report.ok:
        logger.warning("%s fails at pair %s", spec.name, failure)
    return report


def unit_neighbour_tightness(spec: PeriodicSpec) -> TightnessReport:
    """Every vertex of a degree-3 graph has a unit neighbour at distance exactly 1+√2.

    Variant sites are evaluated with every site taking the same choice, once per choice.
    """
    if spec.variants:
        uniform = [_uniform(spec, which) for which in (0, 1)]
        reports = [unit_neighbour_tightness(s) for s in uniform]
        return TightnessReport(
            name=spec.name,
            ok=all(r.ok for r in reports),
            witnesses=reports[0].witnesses,
            missing=tuple(sorted({p for r in reports for p in r.missing})),
        )
    win = _materialize(spec)
    _check_structure(spec, win)

    def neighbours(x: Point):
        return win.adjacency.get(x, ())

    witnesses: dict[Point, Point] = {}
    missing: list[Point] = []
    for p in win.reps:
        for d in ((1, 0), (0, 1), (-1, 0), (0, -1)):
            q = (p[0] + d[0], p[1] + d[1])
            if shortest_path_length(neighbours, p, q, DILATION) == DILATION:
                witnesses[p] = q
                break
        else:
            missing.append(p)
    return TightnessReport(spec.name, not missing, witnesses, tuple(missing))


def _uniform(spec: PeriodicSpec, which: int) -> PeriodicSpec:
    if which not in (0, 1):
        raise PreconditionError(f"variant choice must be 0 or 1, got {which}")
    chosen = tuple(e for v in spec.variants for e in v.choice(which))
    return PeriodicSpec(f"{spec.name}[{'AB'[which]}]", spec.t1, spec.t2, spec.edges + chosen)
