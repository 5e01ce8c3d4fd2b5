"""Exact space backends and the vetted free minimal systems.

Points carry canonical exact representations (golden-field circle
values, eventually periodic 2-adic bit streams, finite indices, pairs),
so equality is decidable and every metric comparison against a rational
threshold is exact.  Open sets are finite unions of "boxes" (arcs,
cylinders, finite index sets and products of those), which are closed
under intersection and under translation by the dynamics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .qphi import GOLDEN_ANGLE, QPhi

# ---------------------------------------------------------------------------
# points
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CirclePoint:
    """A point of the circle R/Z with an exact Q(phi) coordinate in [0, 1)."""

    value: QPhi

    def __post_init__(self):
        object.__setattr__(self, "value", QPhi.coerce(self.value).mod1())


def _canon_ev_periodic(head, cycle):
    """Canonical (head, cycle) for an eventually periodic sequence.

    The cycle is made primitive (not a power of a shorter word) and the
    head minimal (no trailing head item that merely repeats the cycle).
    """
    head = tuple(head)
    cycle = tuple(cycle)
    if not cycle:
        raise ValueError("cycle must be non-empty")
    n = len(cycle)
    for d in range(1, n + 1):
        if n % d == 0 and cycle[:d] * (n // d) == cycle:
            cycle = cycle[:d]
            break
    while head and head[-1] == cycle[-1]:
        head = head[:-1]
        cycle = (cycle[-1],) + cycle[:-1]
    return head, cycle


@dataclass(frozen=True)
class PadicPoint:
    """A rational 2-adic integer as an eventually periodic bit stream.

    ``pre + per*per*...`` read least-significant-bit first; the stored
    pair is canonical (primitive period, minimal preperiod), so equality
    of points is equality of representations.
    """

    pre: tuple[int, ...]
    per: tuple[int, ...]

    def __post_init__(self):
        if any(b not in (0, 1) for b in self.pre + self.per):
            raise ValueError("bits must be 0 or 1")
        pre, per = _canon_ev_periodic(self.pre, self.per)
        object.__setattr__(self, "pre", pre)
        object.__setattr__(self, "per", per)

    def bit(self, i: int) -> int:
        if i < len(self.pre):
            return self.pre[i]
        return self.per[(i - len(self.pre)) % len(self.per)]

    def bits(self, n: int) -> tuple[int, ...]:
        return tuple(self.bit(i) for i in range(n))

    def to_fraction(self) -> Fraction:
        p_val = sum(b << i for i, b in enumerate(self.pre))
        w = sum(b << i for i, b in enumerate(self.per))
        m = len(self.pre)
        big_l = len(self.per)
        return p_val - Fraction((1 << m) * w, (1 << big_l) - 1)

    @staticmethod
    def from_fraction(x: Fraction) -> "PadicPoint":
        x = Fraction(x)
        den = x.denominator
        if den % 2 == 0:
            raise ValueError("only 2-adic integers (odd denominator) are representable")
        # digit extraction keeps the (odd) denominator fixed, so the state
        # is just the numerator; the walk is eventually periodic and the
        # first repeat gives the canonical minimal representation
        seen: dict[int, int] = {}
        bits: list[int] = []
        num = x.numerator
        while num not in seen:
            seen[num] = len(bits)
            b = num & 1
            bits.append(b)
            num = (num - b * den) >> 1
        i = seen[num]
        return PadicPoint(tuple(bits[:i]), tuple(bits[i:]))

    @staticmethod
    def from_int(n: int) -> "PadicPoint":
        return PadicPoint.from_fraction(Fraction(n))


@dataclass(frozen=True)
class FinitePoint:
    """An element of a declared finite set {0, .., size-1}, or of the
    countable discrete space N when ``size`` is None."""

    index: int
    size: int | None = None

    def __post_init__(self):
        if self.index < 0:
            raise ValueError("index must be non-negative")
        if self.size is not None and not 0 <= self.index < self.size:
            raise ValueError(f"index {self.index} out of range for size {self.size}")


@dataclass(frozen=True)
class PairPoint:
    left: "Point"
    right: "Point"


Point = CirclePoint | PadicPoint | FinitePoint | PairPoint


def canonicalize(pt: Point) -> Point:
    """Rebuild a point through its constructor; idempotent by design."""
    if isinstance(pt, CirclePoint):
        return CirclePoint(pt.value)
    if isinstance(pt, PadicPoint):
        return PadicPoint(pt.pre, pt.per)
    if isinstance(pt, FinitePoint):
        return FinitePoint(pt.index, pt.size)
    if isinstance(pt, PairPoint):
        return PairPoint(canonicalize(pt.left), canonicalize(pt.right))
    raise TypeError(f"not a point: {pt!r}")


# ---------------------------------------------------------------------------
# boxes (finite unions of basic open sets)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Arc:
    """Open arc (start, start+length) mod 1; 0 < length <= 1.

    Length exactly 1 is the circle minus the start point, which is a
    legitimate basic open set.
    """

    start: QPhi
    length: QPhi

    def __post_init__(self):
        object.__setattr__(self, "start", QPhi.coerce(self.start).mod1())
        object.__setattr__(self, "length", QPhi.coerce(self.length))
        if not (QPhi(0) < self.length <= QPhi(1)):
            raise ValueError("arc length must lie in (0, 1]")

    @property
    def end(self) -> QPhi:
        return (self.start + self.length).mod1()

    def contains(self, t: QPhi, closed: bool = False) -> bool:
        d = (t - self.start).mod1()
        if closed:
            return d <= self.length
        return QPhi(0) < d < self.length


@dataclass(frozen=True)
class CircleBox:
    """Finite union of open arcs, or the full circle."""

    arcs: tuple[Arc, ...]
    full: bool = False

    def is_empty(self) -> bool:
        return not self.full and not self.arcs


CIRCLE_FULL = CircleBox((), True)
CIRCLE_EMPTY = CircleBox(())


@dataclass(frozen=True)
class CantorBox:
    """Finite union of cylinders [w] = {x : x starts with bits w}.

    Canonical form: sorted, no word an extension of another, and no two
    sibling words that could merge into their common parent.
    """

    words: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        words = set(self.words)
        changed = True
        while changed:
            changed = False
            for w in sorted(words, key=len, reverse=True):
                if w and any(w[: len(u)] == u for u in words if len(u) < len(w)):
                    words.discard(w)
                    changed = True
            for w in sorted(words, key=len, reverse=True):
                if w and w[:-1] + (1 - w[-1],) in words:
                    words.discard(w)
                    words.discard(w[:-1] + (1 - w[-1],))
                    words.add(w[:-1])
                    changed = True
                    break
        object.__setattr__(self, "words", tuple(sorted(words)))

    def is_empty(self) -> bool:
        return not self.words

    def is_full(self) -> bool:
        return self.words == ((),)

    def contains(self, pt: PadicPoint) -> bool:
        return any(pt.bits(len(w)) == w for w in self.words)


CANTOR_FULL = CantorBox(((),))
CANTOR_EMPTY = CantorBox(())


@dataclass(frozen=True)
class FiniteBox:
    """Subset of a finite set {0..size-1}, or of N when size is None."""

    indices: frozenset[int]
    size: int | None

    def is_empty(self) -> bool:
        return not self.indices

    def is_full(self) -> bool:
        return self.size is not None and len(self.indices) == self.size

    def contains(self, pt: FinitePoint) -> bool:
        return pt.index in self.indices


@dataclass(frozen=True)
class ProductBox:
    left: "Box"
    right: "Box"

    def is_empty(self) -> bool:
        return box_is_empty(self.left) or box_is_empty(self.right)


Box = CircleBox | CantorBox | FiniteBox | ProductBox


def box_is_empty(b: Box) -> bool:
    return b.is_empty()


def box_contains(b: Box, pt: Point) -> bool:
    if isinstance(b, CircleBox):
        return b.full or any(a.contains(pt.value) for a in b.arcs)
    if isinstance(b, CantorBox):
        return b.contains(pt)
    if isinstance(b, FiniteBox):
        return b.contains(pt)
    if isinstance(b, ProductBox):
        return box_contains(b.left, pt.left) and box_contains(b.right, pt.right)
    raise TypeError(f"not a box: {b!r}")


def _arc_intersect(a: Arc, b: Arc) -> list[Arc]:
    # work in the cover: a = (0, la) after shifting by -a.start
    la, lb = a.length, b.length
    off = (b.start - a.start).mod1()
    out = []
    for k in (QPhi(-1), QPhi(0)):
        lo = off + k  # candidate lift of b: (lo, lo + lb)
        s = lo if lo > QPhi(0) else QPhi(0)
        e = lo + lb if lo + lb < la else la
        if s < e:
            out.append(Arc((a.start + s).mod1(), e - s))
    return out


def box_intersect(a: Box, b: Box) -> Box:
    if isinstance(a, CircleBox) and isinstance(b, CircleBox):
        if a.full:
            return b
        if b.full:
            return a
        arcs: list[Arc] = []
        for x in a.arcs:
            for y in b.arcs:
                arcs.extend(_arc_intersect(x, y))
        return CircleBox(tuple(sorted(arcs, key=lambda r: (r.start, r.length))))
    if isinstance(a, CantorBox) and isinstance(b, CantorBox):
        words = []
        for u in a.words:
            for w in b.words:
                if u[: len(w)] == w[: len(u)]:
                    words.append(u if len(u) >= len(w) else w)
        return CantorBox(tuple(words))
    if isinstance(a, FiniteBox) and isinstance(b, FiniteBox):
        if a.size != b.size:
            raise ValueError("finite boxes over different sets")
        return FiniteBox(a.indices & b.indices, a.size)
    if isinstance(a, ProductBox) and isinstance(b, ProductBox):
        return ProductBox(box_intersect(a.left, b.left), box_intersect(a.right, b.right))
    raise TypeError(f"cannot intersect {type(a).__name__} with {type(b).__name__}")


def box_rep_point(b: Box) -> Point:
    """An explicit point inside a non-empty box."""
    if isinstance(b, CircleBox):
        if b.full:
            return CirclePoint(QPhi(0))
        if not b.arcs:
            raise ValueError("empty box has no representative")
        a = b.arcs[0]
        return CirclePoint((a.start + a.length / 2).mod1())
    if isinstance(b, CantorBox):
        if not b.words:
            raise ValueError("empty box has no representative")
        return PadicPoint(b.words[0], (0,))
    if isinstance(b, FiniteBox):
        if not b.indices:
            raise ValueError("empty box has no representative")
        return FinitePoint(min(b.indices), b.size)
    if isinstance(b, ProductBox):
        return PairPoint(box_rep_point(b.left), box_rep_point(b.right))
    raise TypeError(f"not a box: {b!r}")


# --- exact coverage sweeps -------------------------------------------------


def _cover_line(start: QPhi, end: QPhi, intervals, closed_target: bool) -> bool:
    """Does a family of OPEN intervals cover [start, end] (or (start, end))?"""
    reach = start
    guard = 0
    while (reach <= end) if closed_target else (reach < end):
        guard += 1
        if guard > 4 * len(intervals) + 8:
            return False
        best = None
        for s, e in intervals:
            usable = s < reach or (not closed_target and s <= start and reach == start)
            if usable and e > reach and (best is None or e > best):
                best = e
        if best is None:
            return False
        reach = best
    return True


def circle_covered_by_arcs(arcs: tuple[Arc, ...], target: CircleBox | None = None) -> bool:
    """Exact test that open arcs cover the closure of ``target``.

    ``target=None`` means the whole circle.  The target's closure is a
    finite union of closed arcs (or the full circle); each closed piece
    is checked by a lifted greedy sweep with exact comparisons.
    """
    if target is None or (isinstance(target, CircleBox) and target.full):
        if not arcs:
            return False
        c = (arcs[0].start + arcs[0].length / 2).mod1()
        targets = [(c, c + QPhi(1), True)]
    else:
        targets = [(a.start, a.start + a.length, True) for a in target.arcs]
    lifted = []
    for a in arcs:
        for k in (-1, 0, 1, 2):
            lifted.append((a.start + QPhi(k), a.start + a.length + QPhi(k)))
    return all(_cover_line(s, e, lifted, closed) for s, e, closed in targets)


def cantor_covered_by_words(words, target: CantorBox | None = None) -> bool:
    """Exact test that cylinders cover ``target`` (None: the whole space)."""
    words = list(words)
    if target is None:
        target_words = [()]
    else:
        target_words = list(target.words)
    if not target_words:
        return True
    if not words:
        return False
    depth = max(len(w) for w in words)

    def covered(prefix):
        if any(prefix[: len(w)] == w[: len(prefix)] and len(w) <= len(prefix) for w in words):
            return True
        if len(prefix) >= depth:
            return False
        return covered(prefix + (0,)) and covered(prefix + (1,))

    return all(covered(t) for t in target_words)


# ---------------------------------------------------------------------------
# backends
# ---------------------------------------------------------------------------


def _unpair(n: int) -> tuple[int, int]:
    # inverse Cantor pairing: n -> (a, b) with index (a+b)(a+b+1)/2 + b
    w = (math.isqrt(8 * n + 1) - 1) // 2
    b = n - w * (w + 1) // 2
    return w - b, b


def pair_index(a: int, b: int) -> int:
    return (a + b) * (a + b + 1) // 2 + b


class SpaceBackend:
    """Base class; concrete backends fix the point type, the metric and
    a total enumeration of non-empty basic open boxes."""

    kind: str = ""
    compact: bool = False
    dim: int = 0

    # number of basic opens (None = countably many)
    basic_count: int | None = None

    def basic_open(self, i: int) -> Box:
        raise NotImplementedError

    def full_box(self) -> Box:
        raise NotImplementedError

    def random_point(self, rng) -> Point:
        raise NotImplementedError

    def dist_le(self, a: Point, b: Point, eps: Fraction) -> bool:
        raise NotImplementedError

    def __repr__(self):
        return f"<{type(self).__name__}>"


class CircleBackend(SpaceBackend):
    kind = "circle"
    compact = True
    dim = 1
    basic_count = None

    def basic_open(self, i: int) -> Box:
        # overlapping dyadic arcs (k/2^l, (k+2)/2^l), l >= 1: a basis.
        level, k = _unpair(i)
        level += 1
        k %= 1 << level
        return CircleBox((Arc(QPhi(Fraction(k, 1 << level)), QPhi(Fraction(2, 1 << level))),))

    def full_box(self) -> Box:
        return CIRCLE_FULL

    def random_point(self, rng) -> CirclePoint:
        p = Fraction(rng.randrange(-64, 64), rng.randrange(1, 16))
        q = Fraction(rng.randrange(-8, 8), rng.randrange(1, 8))
        return CirclePoint(QPhi(p, q))

    def dist_le(self, a: CirclePoint, b: CirclePoint, eps: Fraction) -> bool:
        d = (a.value - b.value).mod1()
        # arc distance min(d, 1-d) <= eps
        return d <= QPhi(eps) or QPhi(1) - d <= QPhi(eps)


class CantorBackend(SpaceBackend):
    kind = "cantor"
    compact = True
    dim = 0
    basic_count = None

    def basic_open(self, i: int) -> Box:
        # all finite words ordered by length, then binary value
        length = 0
        base = 0
        while i >= base + (1 << length):
            base += 1 << length
            length += 1
        v = i - base
        word = tuple((v >> j) & 1 for j in range(length))
        return CantorBox((word,))

    def full_box(self) -> Box:
        return CANTOR_FULL

    def random_point(self, rng) -> PadicPoint:
        pre = tuple(rng.randrange(2) for _ in range(rng.randrange(0, 4)))
        per = tuple(rng.randrange(2) for _ in range(rng.randrange(1, 4)))
        return PadicPoint(pre, per)

    def dist_le(self, a: PadicPoint, b: PadicPoint, eps: Fraction) -> bool:
        # d(a, b) = 2^-(longest common prefix); exact via 2-adic valuation
        if a == b:
            return True
        diff = a.to_fraction() - b.to_fraction()
        num = abs(diff.numerator)
        v = 0
        while num % 2 == 0:
            num //= 2
            v += 1
        return Fraction(1, 1 << v) <= eps


class FiniteBackend(SpaceBackend):
    kind = "finite"
    compact = True
    dim = 0

    def __init__(self, size: int):
        if size < 1:
            raise ValueError("finite backend needs at least one point")
        self.size = size
        self.basic_count = size

    def basic_open(self, i: int) -> Box:
        return FiniteBox(frozenset({i % self.size}), self.size)

    def full_box(self) -> Box:
        return FiniteBox(frozenset(range(self.size)), self.size)

    def random_point(self, rng) -> FinitePoint:
        return FinitePoint(rng.randrange(self.size), self.size)

    def dist_le(self, a: FinitePoint, b: FinitePoint, eps: Fraction) -> bool:
        return a == b or eps >= 1

    def __repr__(self):
        return f"<FiniteBackend({self.size})>"


class CountableBackend(SpaceBackend):
    """N with the discrete metric; basic opens are singletons."""

    kind = "countable-discrete"
    compact = False
    dim = 0
    basic_count = None

    def basic_open(self, i: int) -> Box:
        return FiniteBox(frozenset({i}), None)

    def full_box(self) -> Box:
        raise ValueError("the countable discrete space has no finite full box")

    def random_point(self, rng) -> FinitePoint:
        return FinitePoint(rng.randrange(64), None)

    def dist_le(self, a: FinitePoint, b: FinitePoint, eps: Fraction) -> bool:
        return a == b or eps >= 1


class ProductBackend(SpaceBackend):
    kind = "product"

    def __init__(self, left: SpaceBackend, right: SpaceBackend):
        self.left = left
        self.right = right
        self.compact = left.compact and right.compact
        self.dim = left.dim + right.dim
        if left.basic_count is None or right.basic_count is None:
            self.basic_count = None
        else:
            self.basic_count = left.basic_count * right.basic_count

    def basic_open(self, i: int) -> Box:
        lc, rc = self.left.basic_count, self.right.basic_count
        if lc is not None and rc is not None:
            return ProductBox(self.left.basic_open(i % lc), self.right.basic_open((i // lc) % rc))
        if lc is not None:
            return ProductBox(self.left.basic_open(i % lc), self.right.basic_open(i // lc))
        if rc is not None:
            return ProductBox(self.left.basic_open(i // rc), self.right.basic_open(i % rc))
        a, b = _unpair(i)
        return ProductBox(self.left.basic_open(a), self.right.basic_open(b))

    def full_box(self) -> Box:
        return ProductBox(self.left.full_box(), self.right.full_box())

    def random_point(self, rng) -> PairPoint:
        return PairPoint(self.left.random_point(rng), self.right.random_point(rng))

    def dist_le(self, a: PairPoint, b: PairPoint, eps: Fraction) -> bool:
        # max metric: both coordinates within eps
        return self.left.dist_le(a.left, b.left, eps) and self.right.dist_le(
            a.right, b.right, eps
        )

    def __repr__(self):
        return f"<ProductBackend({self.left!r} x {self.right!r})>"


def point_backend() -> FiniteBackend:
    return FiniteBackend(1)


# ---------------------------------------------------------------------------
# dense sequences
# ---------------------------------------------------------------------------


def dense_sequence(backend: SpaceBackend, i: int) -> Point:
    """The i-th term (i >= 1) of a sequence visiting every basic open
    infinitely often, via the diagonal pairing (box index, repetition)."""
    if i < 1:
        raise ValueError("dense sequence is indexed from 1")
    n = i - 1
    if backend.basic_count is not None:
        box_idx = n % backend.basic_count
    else:
        box_idx, _rep = _unpair(n)
    return box_rep_point(backend.basic_open(box_idx))


def dense_indices_hitting(backend: SpaceBackend, box_idx: int, count: int) -> list[int]:
    """The first ``count`` sequence positions i whose term is the
    representative of basic open ``box_idx`` (all repetitions of it)."""
    if backend.basic_count is not None:
        base = box_idx % backend.basic_count
        return [base + 1 + k * backend.basic_count for k in range(count)]
    return [pair_index(box_idx, rep) + 1 for rep in range(count)]


# ---------------------------------------------------------------------------
# exact epsilon-density
# ---------------------------------------------------------------------------


def _cantor_depth(eps: Fraction) -> int:
    # least n >= 0 with 2^-n <= eps
    n = 0
    while Fraction(1, 1 << n) > eps:
        n += 1
    return n


def _circle_dense(points: list[CirclePoint], eps: Fraction) -> bool:
    if not points:
        return False
    vals = sorted({p.value for p in points})
    two_eps = QPhi(2 * eps)
    for i, v in enumerate(vals):
        nxt = vals[(i + 1) % len(vals)]
        gap = (nxt - v).mod1() if len(vals) > 1 else QPhi(1)
        if gap > two_eps:
            return False
    return True


def _torus_dense(points: list[PairPoint], eps: Fraction) -> bool:
    """Exact 2-circle density: closed eps-squares must cover the torus."""
    if not points:
        return False
    e = QPhi(eps)
    if QPhi(2 * eps) >= QPhi(1):
        return True
    events = sorted({(p.left.value + s * e).mod1() for p in points for s in (-1, 1)})
    for i in range(len(events)):
        lo, hi = events[i], events[(i + 1) % len(events)]
        mid = (lo + ((hi - lo).mod1() / 2)).mod1()
        # squares active across this x-strip
        arcs = []
        for p in points:
            if (mid - (p.left.value - e)).mod1() <= QPhi(2 * eps):
                arcs.append((p.right.value - e, p.right.value - e + QPhi(2 * eps)))
        if not _closed_arcs_cover_circle(arcs):
            return False
    return True


def _closed_arcs_cover_circle(arcs) -> bool:
    if not arcs:
        return False
    start = arcs[0][0].mod1()
    lifted = []
    for s, e in arcs:
        length = e - s
        s = s.mod1()
        for k in (-1, 0, 1, 2):
            lifted.append((s + QPhi(k), s + length + QPhi(k)))
    reach = start
    target = start + QPhi(1)
    guard = 0
    while reach < target:
        guard += 1
        if guard > 4 * len(lifted) + 8:
            return False
        best = None
        for s, e in lifted:
            if s <= reach and e > reach and (best is None or e > best):
                best = e
        if best is None:
            return False
        reach = best
    return True


def eps_dense(backend: SpaceBackend, points, eps: Fraction) -> bool:
    """Is the finite set ``points`` eps-dense (closed balls, exact)?"""
    eps = Fraction(eps)
    points = list(points)
    if isinstance(backend, FiniteBackend):
        if not points:
            return False
        if eps >= 1:
            return True
        return {p.index for p in points} == set(range(backend.size))
    if isinstance(backend, CantorBackend):
        if not points:
            return False
        n = _cantor_depth(eps)
        return {p.bits(n) for p in points} == {
            tuple((v >> j) & 1 for j in range(n)) for v in range(1 << n)
        }
    if isinstance(backend, CircleBackend):
        return _circle_dense(points, eps)
    if isinstance(backend, CountableBackend):
        return bool(points) and eps >= 1
    if isinstance(backend, ProductBackend):
        return _product_dense(backend, points, eps)
    raise TypeError(f"unsupported backend {backend!r}")


def _buckets(backend: SpaceBackend, eps: Fraction):
    """If closeness at eps is an equivalence on this factor, return the
    (bucket key function, full list of bucket keys); else None."""
    if isinstance(backend, FiniteBackend):
        if eps >= 1:
            return (lambda p: 0), [0]
        return (lambda p: p.index), list(range(backend.size))
    if isinstance(backend, CantorBackend):
        n = _cantor_depth(eps)
        return (lambda p: p.bits(n)), [
            tuple((v >> j) & 1 for j in range(n)) for v in range(1 << n)
        ]
    return None


def _product_dense(backend: ProductBackend, points, eps: Fraction) -> bool:
    if not points:
        return False
    left_b = _buckets(backend.left, eps)
    if left_b is not None:
        key, keys = left_b
        groups: dict = {}
        for p in points:
            groups.setdefault(key(p.left), []).append(p.right)
        return all(k in groups and eps_dense(backend.right, groups[k], eps) for k in keys)
    right_b = _buckets(backend.right, eps)
    if right_b is not None:
        key, keys = right_b
        groups = {}
        for p in points:
            groups.setdefault(key(p.right), []).append(p.left)
        return all(k in groups and eps_dense(backend.left, groups[k], eps) for k in keys)
    if isinstance(backend.left, CircleBackend) and isinstance(backend.right, CircleBackend):
        return _torus_dense(points, eps)
    raise TypeError("unsupported product for density check")


# ---------------------------------------------------------------------------
# the two vetted free minimal systems (and a non-free control)
# ---------------------------------------------------------------------------


def circle_rotate(t: CirclePoint, steps: int) -> CirclePoint:
    """Rotate by steps * (phi - 1) on the circle, exactly.

    steps * (phi - 1) = -steps + steps*phi, so both coefficients shift
    by an integer; the constructor reduces mod 1.
    """
    v = t.value
    return CirclePoint(QPhi(v.p - steps, v.q + steps))


_TO_FRACTION_CACHE: dict[tuple, Fraction] = {}


def _padic_fraction(x: PadicPoint) -> Fraction:
    key = (x.pre, x.per)
    hit = _TO_FRACTION_CACHE.get(key)
    if hit is None:
        if len(_TO_FRACTION_CACHE) > 4096:
            _TO_FRACTION_CACHE.clear()
        hit = _TO_FRACTION_CACHE[key] = x.to_fraction()
    return hit


def odometer_succ(x: PadicPoint, steps: int) -> PadicPoint:
    """Add an integer in the 2-adics with full carry propagation."""
    return PadicPoint.from_fraction(_padic_fraction(x) + steps)


class MinimalSystem:
    """A homeomorphism of a space backend with declared dynamical
    properties, used as the Z-factor of the model graph.

    ``point_like_ktheory`` marks systems standing in for an infinite
    compact space whose function algebra has the K-theory of a point;
    that declared value, not the K-theory of the carrier space itself,
    is what the K-theory pipeline consumes.
    """

    def __init__(self, name, backend, power, *, minimal, free, infinite, point_like_ktheory):
        self.name = name
        self.backend = backend
        self._power = power
        self.minimal = minimal
        self.free = free
        self.infinite = infinite
        self.point_like_ktheory = point_like_ktheory

    def power(self, p: Point, k: int) -> Point:
        return self._power(p, k)

    def forward(self, p: Point) -> Point:
        return self._power(p, 1)

    def backward(self, p: Point) -> Point:
        return self._power(p, -1)

    def translate_box(self, b: Box, k: int) -> Box:
        """Image of a box under the k-th power of the map (boxes map to
        boxes for all vetted systems)."""
        if isinstance(b, CircleBox):
            if b.full:
                return b
            shift = QPhi(k) * GOLDEN_ANGLE
            return CircleBox(tuple(Arc((a.start + shift).mod1(), a.length) for a in b.arcs))
        if isinstance(b, CantorBox):
            words = []
            for w in b.words:
                n = len(w)
                if n == 0:
                    words.append(w)
                    continue
                v = sum(bit << j for j, bit in enumerate(w))
                v = (v + k) % (1 << n)
                words.append(tuple((v >> j) & 1 for j in range(n)))
            return CantorBox(tuple(words))
        if isinstance(b, FiniteBox):
            n = b.size
            return FiniteBox(frozenset((i + k) % n for i in b.indices), n)
        raise TypeError(f"cannot translate box {b!r}")

    def __repr__(self):
        return f"<MinimalSystem {self.name}>"


def golden_rotation() -> MinimalSystem:
    """Rotation by phi - 1 on the circle: free and minimal, with exact
    Q(phi) arithmetic."""
    return MinimalSystem(
        "golden-rotation",
        CircleBackend(),
        lambda p, k: circle_rotate(p, k),
        minimal=True,
        free=True,
        infinite=True,
        point_like_ktheory=True,
    )


def odometer() -> MinimalSystem:
    """The 2-adic odometer (+1 with carry): a free minimal Cantor system."""
    return MinimalSystem(
        "odometer",
        CantorBackend(),
        lambda p, k: odometer_succ(p, k),
        minimal=True,
        free=True,
        infinite=True,
        point_like_ktheory=True,
    )


def finite_cyclic(n: int) -> MinimalSystem:
    """Cyclic shift on n points: minimal but not free; negative control."""
    backend = FiniteBackend(n)
    return MinimalSystem(
        f"finite-cyclic-{n}",
        backend,
        lambda p, k: FinitePoint((p.index + k) % n, n),
        minimal=True,
        free=False,
        infinite=False,
        point_like_ktheory=False,
    )


SYSTEM_BUILDERS = {
    "golden-rotation": golden_rotation,
    "odometer": odometer,
}


# ---------------------------------------------------------------------------
# dynamical checks
# ---------------------------------------------------------------------------


def orbit_density_check(system: MinimalSystem, z: Point, eps: Fraction, max_iter: int):
    """Walk the forward orbit until eps-dense; returns (dense, steps_used)
    where steps_used counts the orbit points consumed.  Exhausting the
    budget reports (False, max_iter) rather than raising."""
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    pts: list[Point] = []
    w = z
    for used in range(1, max_iter + 1):
        pts.append(w)
        if eps_dense(system.backend, pts, eps):
            return True, used
        w = system.forward(w)
    return False, max_iter


def freeness_check(system: MinimalSystem, z: Point, bound: int) -> list[int]:
    """All periods 1 <= k <= bound with map^k(z) = z, by exact equality.
    An empty list certifies freeness at z up to the bound."""
    if bound < 1:
        raise ValueError("bound must be at least 1")
    periods = []
    w = z
    for k in range(1, bound + 1):
        w = system.forward(w)
        if w == z:
            periods.append(k)
    return periods
