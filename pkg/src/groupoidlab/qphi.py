"""Exact arithmetic in Q(phi), phi the golden ratio.

Numbers are stored as ``p + q*phi`` with rational coefficients.  Since
``phi**2 = phi + 1`` this set is a ring, and because ``2*(p + q*phi) =
(2p + q) + q*sqrt(5)`` with ``sqrt(5)`` irrational, signs, floors and
reductions mod 1 are decidable by pure integer arithmetic.  No floating
point is used anywhere in this module.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from math import isqrt


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def _sign_pq(p: Fraction, q: Fraction) -> int:
    # integer-only core: with p = a/b, q = c/d (b, d > 0), the sign of
    # p + q*phi is the sign of (2ad + bc) + bc*sqrt(5)
    a, b = p.numerator, p.denominator
    c, d = q.numerator, q.denominator
    if c == 0:
        return (a > 0) - (a < 0)
    t = 2 * a * d + b * c
    s = b * c
    if s > 0:
        if t >= 0:
            return 1
        return 1 if t * t < 5 * s * s else -1
    if t <= 0:
        return -1
    return -1 if t * t < 5 * s * s else 1


def qphi_sign(p, q) -> int:
    """Exact sign of ``p + q*phi`` as ``-1``, ``0`` or ``+1``.

    Decided by case analysis on ``(2p + q) + q*sqrt(5)``: when the two
    terms have the same sign the answer is immediate, otherwise one
    integer squaring comparing ``(2p + q)**2`` against ``5*q**2``
    settles it.  Equality of the squares would force ``sqrt(5)`` to be
    rational, so it only occurs at ``p = q = 0``.
    """
    return _sign_pq(Fraction(p), Fraction(q))


@total_ordering
class QPhi:
    """An element ``p + q*phi`` of Q(phi) with exact rational coefficients."""

    __slots__ = ("_p", "_q")

    def __init__(self, p=0, q=0) -> None:
        self._p = p if type(p) is Fraction else Fraction(p)
        self._q = q if type(q) is Fraction else Fraction(q)

    @property
    def p(self) -> Fraction:
        return self._p

    @property
    def q(self) -> Fraction:
        return self._q

    @classmethod
    def coerce(cls, value) -> "QPhi":
        if isinstance(value, QPhi):
            return value
        return cls(value, 0)

    def __repr__(self) -> str:
        if self._q == 0:
            return f"QPhi({self._p})"
        return f"QPhi({self._p}, {self._q})"

    def __str__(self) -> str:
        if self._q == 0:
            return str(self._p)
        return f"{self._p}+{self._q}phi"

    def __hash__(self) -> int:
        return hash((self._p, self._q))

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = QPhi(other)
        if not isinstance(other, QPhi):
            return NotImplemented
        return self._p == other._p and self._q == other._q

    def __lt__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = QPhi(other)
        if not isinstance(other, QPhi):
            return NotImplemented
        return _sign_pq(self._p - other._p, self._q - other._q) < 0

    def sign(self) -> int:
        return _sign_pq(self._p, self._q)

    def __add__(self, other) -> "QPhi":
        other = QPhi.coerce(other)
        return QPhi(self._p + other._p, self._q + other._q)

    __radd__ = __add__

    def __neg__(self) -> "QPhi":
        return QPhi(-self._p, -self._q)

    def __sub__(self, other) -> "QPhi":
        return self + (-QPhi.coerce(other))

    def __rsub__(self, other) -> "QPhi":
        return QPhi.coerce(other) + (-self)

    def __mul__(self, other) -> "QPhi":
        # (p1 + q1*phi)(p2 + q2*phi), using phi**2 = phi + 1
        other = QPhi.coerce(other)
        p1, q1, p2, q2 = self._p, self._q, other._p, other._q
        return QPhi(p1 * p2 + q1 * q2, p1 * q2 + q1 * p2 + q1 * q2)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "QPhi":
        # division by a rational scalar only; enough for midpoints etc.
        other = Fraction(other)
        return QPhi(self._p / other, self._q / other)

    def __floor__(self) -> int:
        # With p = a/b and q = c/d: 2bd*(p + q*phi) = (2ad + bc) + bc*sqrt5.
        # floor(S*sqrt5) = isqrt(5*S*S) for S >= 0; 5*S*S is never a
        # perfect square for S != 0, which settles the S < 0 case too.
        a, b = self._p.numerator, self._p.denominator
        c, d = self._q.numerator, self._q.denominator
        m = 2 * b * d
        big_r = 2 * a * d + b * c
        big_s = b * c
        if big_s >= 0:
            t = big_r + isqrt(5 * big_s * big_s)
        else:
            t = big_r - isqrt(5 * big_s * big_s) - 1
        return t // m

    def mod1(self) -> "QPhi":
        """Reduce into the fundamental domain [0, 1) of the circle."""
        n = self.__floor__()
        if n == 0:
            return self
        return QPhi(self._p - n, self._q)

    def is_rational(self) -> bool:
        return self._q == 0


#: phi itself and the golden rotation angle phi - 1 = 1/phi.
PHI = QPhi(0, 1)
GOLDEN_ANGLE = QPhi(-1, 1)


def qphi_min(a: QPhi, b: QPhi) -> QPhi:
    return a if a < b else b


def qphi_max(a: QPhi, b: QPhi) -> QPhi:
    return b if a < b else a
