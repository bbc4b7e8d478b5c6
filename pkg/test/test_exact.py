import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from com.exceptions import PreconditionError
from exact import DILATION, ONE, SQRT2, ZERO, Zr2, leq_scaled_sqrt, scaled_sqrt_lt, sign

small = st.integers(min_value=-10_000, max_value=10_000)
elements = st.builds(Zr2, small, small)


def _float_sign(z: Zr2) -> int:
    v = z.a + z.b * math.sqrt(2)
    return (v > 0) - (v < 0)


@given(elements)
def test_sign_matches_float_away_from_zero(z):
    # the closest nonzero a+b√2 to zero with |a|,|b| <= 10^4 is still far above float error
    assert sign(z) == _float_sign(z)


@given(elements, elements)
def test_ring_laws(x, y):
    assert x + y == y + x
    assert x * y == y * x
    assert (x - y) + y == x
    assert x * ONE == x
    assert x * ZERO == ZERO


@given(elements, elements, elements)
def test_distributive(x, y, z):
    assert x * (y + z) == x * y + x * z


@given(elements)
def test_norm_is_the_product_with_the_conjugate(x):
    assert x * Zr2(x.a, -x.b) == Zr2(x.norm(), 0)


def test_ordering():
    assert SQRT2 < Zr2(2, 0)
    assert Zr2(1, 0) < SQRT2
    assert Zr2(3, -2) > ZERO  # 3 - 2√2 ≈ 0.17
    assert Zr2(-3, 2) < ZERO
    assert sorted([DILATION, Zr2(3, 0), Zr2(0, 2)]) == [DILATION, Zr2(0, 2), Zr2(3, 0)]


@pytest.mark.parametrize(
    'text,expected',
    [
        ('3', Zr2(3, 0)),
        ('√2', Zr2(0, 1)),
        ('-2√2', Zr2(0, -2)),
        ('1-√2', Zr2(1, -1)),
        ('3+2√2', Zr2(3, 2)),
        ('4 + 1 sqrt2', Zr2(4, 1)),
    ],
)
def test_parse(text, expected):
    assert Zr2.parse(text) == expected


def test_str_parses_back():
    for z in (Zr2(3, 0), Zr2(0, 1), Zr2(0, -2), Zr2(1, -1), Zr2(3, 2), Zr2(-4, 7)):
        assert Zr2.parse(str(z)) == z


def test_leq_scaled_sqrt_boundary():
    # (1+√2)√2 = 2+√2 exactly
    assert leq_scaled_sqrt(Zr2(2, 1), DILATION, 2)
    assert not leq_scaled_sqrt(Zr2(2, 2), DILATION, 2)
    # 3+√2 against (1+√2)√5 ≈ 5.40
    assert leq_scaled_sqrt(Zr2(3, 1), DILATION, 5)
    assert not leq_scaled_sqrt(Zr2(4, 1), DILATION, 5)


def test_scaled_sqrt_lt():
    assert scaled_sqrt_lt(DILATION, 1, Zr2(3, 0))
    assert not scaled_sqrt_lt(DILATION, 2, Zr2(2, 1))  # equal, not strictly less
    assert not scaled_sqrt_lt(DILATION, 1, Zr2(-5, 0))


def test_preconditions():
    with pytest.raises(PreconditionError):
        leq_scaled_sqrt(Zr2(-1, 0), DILATION, 2)
    with pytest.raises(PreconditionError):
        leq_scaled_sqrt(ONE, Zr2(0, -1), 2)
    with pytest.raises(PreconditionError):
        scaled_sqrt_lt(DILATION, -1, ONE)
