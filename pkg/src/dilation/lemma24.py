"""The weighted lattice H: a bounded exact check and an algebraic certificate
for the inductive step that extends it to every pair."""

import logging
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from types import MappingProxyType

from exact import DILATION, ONE, SQRT2, ZERO, Zr2, leq_scaled_sqrt, sign
from lattice import Point

from .shortest import dijkstra

__all__ = [
    'HGraphWeight',
    'H_WEIGHTS',
    'Lemma24Entry',
    'Lemma24Report',
    'InductionCertificate',
    'SCAN_NORM_LIMIT',
    'lemma24_bounded_check',
    'induction_inequality_certificate',
]

logger = logging.getLogger(__name__)

# q is scanned while |q|^2 < 50, i.e. |q| < 5*sqrt(2)
SCAN_NORM_LIMIT = 50


@dataclass(frozen=True)
class HGraphWeight:
    """Edges of H keyed by squared length; any other offset has no edge."""

    weights: Mapping[int, Zr2] = field(
        default_factory=lambda: MappingProxyType(
            {1: DILATION, 2: DILATION * SQRT2, 5: Zr2(3, 1)}
        )
    )

    def offsets(self) -> list[tuple[Point, Zr2]]:
        return [
            ((dx, dy), self.weights[dx * dx + dy * dy])
            for dx in range(-2, 3)
            for dy in range(-2, 3)
            if dx * dx + dy * dy in self.weights
        ]

    def neighbours(self, p: Point) -> Iterable[tuple[Point, Zr2]]:
        for (dx, dy), w in self.offsets():
            yield (p[0] + dx, p[1] + dy), w


H_WEIGHTS = HGraphWeight()


@dataclass(frozen=True)
class Lemma24Entry:
    q: Point
    distance: Zr2
    ok: bool
    saturated: bool
    # display only; the verdict never reads it
    margin: float


@dataclass(frozen=True)
class Lemma24Report:
    ok: bool
    entries: list[Lemma24Entry]

    @property
    def checked(self) -> int:
        return len(self.entries)


def lemma24_bounded_check(graph: HGraphWeight = H_WEIGHTS) -> Lemma24Report:
    """``d_H(0, q) <= (1+√2)|q|`` for every ``q`` with ``0 < |q|^2 < 50``, exactly."""
    radius = 7  # 7^2 < 50 <= 8^2
    dist, _ = dijkstra(graph, (0, 0), cutoff=DILATION * radius)
    entries: list[Lemma24Entry] = []
    for x in range(-radius, radius + 1):
        for y in range(-radius, radius + 1):
            n = x * x + y * y
            if not 0 < n < SCAN_NORM_LIMIT:
                continue
            d = dist.get((x, y))
            if d is None:
                entries.append(Lemma24Entry((x, y), ZERO, False, False, float('-inf')))
                continue
            bound2 = Zr2(3, 2) * n  # ((1+√2)|q|)^2
            entries.append(
                Lemma24Entry(
                    q=(x, y),
                    distance=d,
                    ok=leq_scaled_sqrt(d, DILATION, n),
                    saturated=d * d == bound2,
                    margin=float(DILATION) * n**0.5 - float(d),
                )
            )
    ok = all(e.ok for e in entries)
    logger.info("bounded check over %d points: %s", len(entries), "pass" if ok else "FAIL")
    return Lemma24Report(ok, entries)


# === Inductive step ===

type Monomial = tuple[int, int]
type Poly = dict[Monomial, Zr2]


def _padd(*ps: Poly) -> Poly:
    out: Poly = {}
    for p in ps:
        for m, c in p.items():
            out[m] = out.get(m, ZERO) + c
    return {m: c for m, c in out.items() if c != ZERO}


def _pmul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for (i, j), c in p.items():
        for (k, l), d in q.items():
            m = (i + k, j + l)
            out[m] = out.get(m, ZERO) + c * d
    return {m: c for m, c in out.items() if c != ZERO}


def _pscale(p: Poly, k: Zr2 | int) -> Poly:
    return _padd({m: c * k for m, c in p.items()})


def _const(c: Zr2 | int) -> Poly:
    return _padd({(0, 0): Zr2.of(c)})


_S: Poly = {(1, 0): ONE}
_T: Poly = {(0, 1): ONE}

MONOMIAL_NAMES: dict[Monomial, str] = {
    (0, 0): '1',
    (1, 0): 's',
    (0, 1): 't',
    (2, 0): 's^2',
    (1, 1): 'st',
    (0, 2): 't^2',
}


@dataclass(frozen=True)
class InductionCertificate:
    """Coefficients of the polynomial whose nonnegativity on ``s, t >= 0`` proves the step."""

    ok: bool
    coefficients: dict[str, Zr2]
    signs: dict[str, int]
    side_conditions: dict[str, bool]


def induction_inequality_certificate() -> InductionCertificate:
    """Certify ``(1+√2)|q - (2, 1)| + 3+√2 <= (1+√2)|q|`` for ``q = (x, y)``, ``5 <= y <= x``.

    Dividing by 1+√2 leaves ``√B - √A >= k`` with ``k = 2√2 - 1``. Since both sides
    are nonnegative this is ``B - A - k² >= 2k√A``; once the left side is known to be
    nonnegative, squaring again gives ``(B - A - k²)² - 4k²A >= 0``. With
    ``x = 5+s+t`` and ``y = 5+s`` every coefficient of that polynomial must be
    nonnegative.
    """
    k = Zr2(3, 1) * Zr2(-1, 1)  # (3+√2)/(1+√2), as (1+√2)(√2-1) = 1
    x = _padd(_const(5), _S, _T)
    y = _padd(_const(5), _S)
    xm2 = _padd(x, _const(-2))
    ym1 = _padd(y, _const(-1))
    a = _padd(_pmul(xm2, xm2), _pmul(ym1, ym1))
    b = _padd(_pmul(x, x), _pmul(y, y))
    left = _padd(b, _pscale(a, -1), _const(-(k * k)))
    poly = _padd(_pmul(left, left), _pscale(a, -4 * (k * k)))

    unexpected = set(poly) - set(MONOMIAL_NAMES)
    coefficients = {name: poly.get(m, ZERO) for m, name in MONOMIAL_NAMES.items()}
    signs = {name: sign(c) for name, c in coefficients.items()}
    side_conditions = {
        'k_positive': sign(k) > 0,
        'left_side_nonnegative': all(sign(c) >= 0 for c in left.values()),
        'degree_at_most_two': not unexpected,
    }
    ok = all(s >= 0 for s in signs.values()) and all(side_conditions.values())
    if not ok:
        logger.error("induction certificate failed: %s %s", signs, side_conditions)
    return InductionCertificate(ok, coefficients, signs, side_conditions)
