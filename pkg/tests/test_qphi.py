import random
from fractions import Fraction
from math import floor

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from groupoidlab.qphi import GOLDEN_ANGLE, PHI, QPhi, qphi_sign


def fibonacci_bounds(n=60):
    """Rational lower/upper bounds for phi from consecutive Fibonacci
    ratios; the oracle interval is ~1e-24 wide at n=60."""
    a, b = 1, 1
    for _ in range(n):
        a, b = b, a + b
    lo, hi = Fraction(b, a), Fraction(a + b, b)
    return (lo, hi) if lo < hi else (hi, lo)


PHI_LO, PHI_HI = fibonacci_bounds()


def interval_sign(p: Fraction, q: Fraction):
    """Sign of p + q*phi by interval arithmetic; None when the interval
    straddles zero (never happens for the sampled denominators)."""
    cands = [p + q * PHI_LO, p + q * PHI_HI]
    lo, hi = min(cands), max(cands)
    if lo > 0:
        return 1
    if hi < 0:
        return -1
    if lo == hi == 0:
        return 0
    return None


def test_sign_examples():
    assert qphi_sign(0, 0) == 0
    assert qphi_sign(1, -1) == -1  # 1 - phi < 0
    assert qphi_sign(-1, 1) == 1  # phi - 1 > 0


def test_sign_against_interval_oracle():
    rng = random.Random(20240517)
    for _ in range(10_000):
        p = Fraction(rng.randrange(-40, 41), rng.randrange(1, 20))
        q = Fraction(rng.randrange(-40, 41), rng.randrange(1, 20))
        expected = interval_sign(p, q)
        if expected is None:
            assert p == 0 and q == 0
            expected = 0
        assert qphi_sign(p, q) == expected


@given(
    st.fractions(min_value=-100, max_value=100, max_denominator=50),
    st.fractions(min_value=-100, max_value=100, max_denominator=50),
)
@settings(max_examples=200, deadline=None)
def test_rational_embedding_matches_fractions(a, b):
    # with q = 0 the field arithmetic is plain rational arithmetic
    x, y = QPhi(a), QPhi(b)
    assert (x + y).p == a + b and (x + y).q == 0
    assert (x * y).p == a * b and (x * y).q == 0
    assert (x - y).p == a - b
    assert (x < y) == (a < b)
    assert floor(x) == floor(a)


@given(
    st.fractions(min_value=-50, max_value=50, max_denominator=30),
    st.fractions(min_value=-20, max_value=20, max_denominator=20),
)
@settings(max_examples=300, deadline=None)
def test_floor_and_mod1(p, q):
    x = QPhi(p, q)
    n = floor(x)
    r = x.mod1()
    assert QPhi(0) <= r < QPhi(1)
    assert r + n == x
    # floor agrees with the interval oracle
    lo = p + q * (PHI_LO if q >= 0 else PHI_HI)
    hi = p + q * (PHI_HI if q >= 0 else PHI_LO)
    assert floor(lo) <= n <= floor(hi)


def test_ring_structure():
    assert PHI * PHI == PHI + 1  # phi^2 = phi + 1
    assert GOLDEN_ANGLE == PHI - 1
    # phi * (phi - 1) = 1
    assert PHI * GOLDEN_ANGLE == QPhi(1)


def test_mul_mixed():
    x = QPhi(Fraction(1, 2), Fraction(1, 3))
    assert x * 6 == QPhi(3, 2)
    assert 6 * x == x * 6
    assert x / 2 == QPhi(Fraction(1, 4), Fraction(1, 6))


def test_order_is_total():
    rng = random.Random(7)
    vals = [QPhi(Fraction(rng.randrange(-9, 10), rng.randrange(1, 7)),
                 Fraction(rng.randrange(-9, 10), rng.randrange(1, 7))) for _ in range(40)]
    s = sorted(vals)
    for a, b in zip(s, s[1:]):
        assert not b < a


def test_hash_consistent_with_eq():
    assert hash(QPhi(Fraction(2, 4), 0)) == hash(QPhi(Fraction(1, 2), 0))
    assert QPhi(Fraction(2, 4)) == QPhi(Fraction(1, 2))


def test_sign_zero_only_at_origin():
    # p + q*phi = 0 with rational p, q forces p = q = 0
    with pytest.raises(ValueError):
        qphi_sign("not a number", 0)
    assert qphi_sign(Fraction(-1), Fraction(1, 2)) != 0
