"""Exact arithmetic in the ring Z[sqrt(2)].

Every length in this library is a sum of unit and diagonal steps, so it is an
element ``a + b*sqrt(2)`` with integer ``a`` and ``b``. Comparisons against
multiples of ``sqrt(n)`` are decided by squaring, never by floating point.
"""

from dataclasses import dataclass
from functools import total_ordering

from com.exceptions import PreconditionError

__all__ = [
    'Zr2',
    'ZERO',
    'ONE',
    'SQRT2',
    'DILATION',
    'sign',
    'leq_scaled_sqrt',
    'scaled_sqrt_lt',
]

type Scalar = int | Zr2


@total_ordering
@dataclass(frozen=True, slots=True)
class Zr2:
    """The number ``a + b*sqrt(2)``. Equality is componentwise."""

    a: int = 0
    b: int = 0

    @classmethod
    def of(cls, x: Scalar) -> 'Zr2':
        if isinstance(x, Zr2):
            return x
        return cls(x, 0)

    @classmethod
    def parse(cls, text: str) -> 'Zr2':
        """Parse ``"a+b√2"`` (also ``"3"``, ``"-2√2"``, ``"1-√2"``)."""
        text = text.replace(' ', '').replace('sqrt2', '√2')
        if not text.endswith('√2'):
            return cls(int(text), 0)
        body = text[:-2]
        cut = max(body.rfind('+'), body.rfind('-'))
        head, tail = (body[:cut], body[cut:]) if cut > 0 else ('', body)
        b = int(tail + '1') if tail in ('', '+', '-') else int(tail)
        return cls(int(head) if head else 0, b)

    def __add__(self, other: Scalar) -> 'Zr2':
        o = Zr2.of(other)
        return Zr2(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other: Scalar) -> 'Zr2':
        o = Zr2.of(other)
        return Zr2(self.a - o.a, self.b - o.b)

    def __rsub__(self, other: Scalar) -> 'Zr2':
        return Zr2.of(other) - self

    def __neg__(self) -> 'Zr2':
        return Zr2(-self.a, -self.b)

    def __mul__(self, other: Scalar) -> 'Zr2':
        o = Zr2.of(other)
        return Zr2(self.a * o.a + 2 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __lt__(self, other: Scalar) -> bool:
        return sign(self - Zr2.of(other)) < 0

    def norm(self) -> int:
        """``a² - 2b²``, the product with the conjugate ``a - b√2``."""
        return self.a * self.a - 2 * self.b * self.b

    def __float__(self) -> float:
        # display only
        return self.a + self.b * 2**0.5

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        coef = {1: '', -1: '-'}.get(self.b, str(self.b))
        if self.a == 0:
            return f"{coef}√2"
        return f"{self.a}{'+' if self.b > 0 else ''}{coef}√2"

    def pair(self) -> tuple[int, int]:
        return (self.a, self.b)


ZERO = Zr2(0, 0)
ONE = Zr2(1, 0)
SQRT2 = Zr2(0, 1)
DILATION = Zr2(1, 1)


def _sgn(x: int) -> int:
    return (x > 0) - (x < 0)


def sign(z: Zr2) -> int:
    """Sign of ``a + b*sqrt(2)`` in {-1, 0, +1}."""
    sa, sb = _sgn(z.a), _sgn(z.b)
    if sa >= 0 and sb >= 0:
        return 1 if sa or sb else 0
    if sa <= 0 and sb <= 0:
        return -1
    # opposite signs: the larger magnitude wins
    return sa if z.norm() > 0 else sb


def _require_nonnegative(**values: Zr2) -> None:
    for name, value in values.items():
        if sign(value) < 0:
            raise PreconditionError(f"{name} must be nonnegative, got {value}")


def leq_scaled_sqrt(length: Zr2, c: Zr2, n: int) -> bool:
    """Decide ``length <= c * sqrt(n)`` for nonnegative ``length`` and ``c``."""
    _require_nonnegative(length=length, c=c)
    if n < 0:
        raise PreconditionError(f"radicand must be nonnegative, got {n}")
    return sign(c * c * n - length * length) >= 0


def scaled_sqrt_lt(c: Zr2, n: int, z: Zr2) -> bool:
    """Decide ``c * sqrt(n) < z`` for nonnegative ``c``; ``z`` may be any sign."""
    _require_nonnegative(c=c)
    if n < 0:
        raise PreconditionError(f"radicand must be nonnegative, got {n}")
    if sign(z) <= 0:
        return False
    return sign(z * z - c * c * n) > 0
