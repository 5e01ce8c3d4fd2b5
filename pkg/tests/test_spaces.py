import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from groupoidlab.qphi import QPhi
from groupoidlab.spaces import (
    Arc,
    CantorBackend,
    CantorBox,
    CircleBackend,
    CircleBox,
    CirclePoint,
    CountableBackend,
    FiniteBackend,
    FinitePoint,
    PadicPoint,
    PairPoint,
    ProductBackend,
    box_contains,
    box_intersect,
    box_rep_point,
    canonicalize,
    circle_covered_by_arcs,
    circle_rotate,
    dense_sequence,
    eps_dense,
    finite_cyclic,
    freeness_check,
    golden_rotation,
    odometer,
    odometer_succ,
    orbit_density_check,
    point_backend,
)

bits = st.integers(min_value=0, max_value=1)


# ---------------------------------------------------------------------------
# points and canonical forms
# ---------------------------------------------------------------------------


@given(st.lists(bits, max_size=6), st.lists(bits, min_size=1, max_size=5))
@settings(max_examples=300, deadline=None)
def test_padic_canonicalization_idempotent(pre, per):
    p = PadicPoint(tuple(pre), tuple(per))
    assert canonicalize(p) == p
    # canonical means primitive cycle and minimal head
    n = len(p.per)
    for d in range(1, n):
        if n % d == 0:
            assert p.per[:d] * (n // d) != p.per
    if p.pre:
        assert p.pre[-1] != p.per[-1]


@given(st.lists(bits, max_size=6), st.lists(bits, min_size=1, max_size=5))
@settings(max_examples=300, deadline=None)
def test_padic_fraction_roundtrip(pre, per):
    p = PadicPoint(tuple(pre), tuple(per))
    assert PadicPoint.from_fraction(p.to_fraction()) == p


def test_padic_equality_canonical_invariant():
    # 1 (0 1)^inf == (1 0)^inf
    assert PadicPoint((1,), (0, 1)) == PadicPoint((), (1, 0))
    # non-primitive cycles collapse
    assert PadicPoint((), (1, 0, 1, 0)) == PadicPoint((), (1, 0))


def test_circle_point_canonical():
    assert CirclePoint(QPhi(Fraction(5, 4))) == CirclePoint(QPhi(Fraction(1, 4)))
    p = CirclePoint(QPhi(Fraction(-1, 3), Fraction(1, 2)))
    assert canonicalize(p) == p
    assert QPhi(0) <= p.value < QPhi(1)


def test_pair_point_canonicalization():
    p = PairPoint(CirclePoint(QPhi(Fraction(3, 2))), PadicPoint((0,), (0,)))
    assert canonicalize(p) == p
    assert p.left == CirclePoint(QPhi(Fraction(1, 2)))


# ---------------------------------------------------------------------------
# dynamics
# ---------------------------------------------------------------------------


def test_rotation_examples():
    zero = CirclePoint(QPhi(0))
    assert circle_rotate(zero, 0) == zero
    assert circle_rotate(CirclePoint(QPhi(Fraction(1, 2))), 1) == CirclePoint(
        QPhi(Fraction(-3, 2), 1)
    )
    assert circle_rotate(circle_rotate(zero, 1), -1) == zero


def test_rotation_is_additive():
    t = CirclePoint(QPhi(Fraction(1, 3), Fraction(1, 5)))
    assert circle_rotate(circle_rotate(t, 3), 4) == circle_rotate(t, 7)


def test_rotation_bijection_sampled():
    sys = golden_rotation()
    rng = random.Random(1)
    for _ in range(100):
        p = sys.backend.random_point(rng)
        assert sys.backward(sys.forward(p)) == p
        assert sys.forward(sys.backward(p)) == p


def test_odometer_examples():
    zero = PadicPoint((), (0,))
    assert odometer_succ(zero, 1) == PadicPoint((1,), (0,))
    assert odometer_succ(PadicPoint((1, 1), (0,)), 1) == PadicPoint((0, 0, 1), (0,))
    # -1 + 1 = 0 with an infinite carry
    assert odometer_succ(PadicPoint((), (1,)), 1) == zero


def test_odometer_group_law():
    rng = random.Random(3)
    sys = odometer()
    for _ in range(50):
        p = sys.backend.random_point(rng)
        a, b = rng.randrange(-9, 10), rng.randrange(-9, 10)
        assert odometer_succ(odometer_succ(p, a), b) == odometer_succ(p, a + b)
        assert sys.backward(sys.forward(p)) == p


# ---------------------------------------------------------------------------
# dense sequences
# ---------------------------------------------------------------------------


def test_dense_sequence_finite_cycles():
    fb = FiniteBackend(2)
    assert [dense_sequence(fb, i).index for i in (1, 2, 3)] == [0, 1, 0]
    pb = point_backend()
    assert all(dense_sequence(pb, i) == FinitePoint(0, 1) for i in range(1, 9))


def test_dense_sequence_cantor_cylinder():
    cb = CantorBackend()
    # basic open number 1 is the cylinder [0]; its representatives keep
    # leading bit 0 at every repetition
    from groupoidlab.spaces import pair_index

    for rep in range(3):
        i = pair_index(1, rep) + 1
        assert dense_sequence(cb, i).bit(0) == 0


@pytest.mark.parametrize(
    "backend", [CircleBackend(), CantorBackend(), FiniteBackend(3), CountableBackend()]
)
def test_dense_sequence_hits_basic_opens(backend):
    counts = [0] * 20
    boxes = [backend.basic_open(b) for b in range(20)]
    if backend.basic_count is not None:
        boxes = boxes[: backend.basic_count]
        counts = counts[: backend.basic_count]
    for i in range(1, 10_001):
        x = dense_sequence(backend, i)
        for b, box in enumerate(boxes):
            if box_contains(box, x):
                counts[b] += 1
    assert all(c >= 3 for c in counts), counts


# ---------------------------------------------------------------------------
# exact density
# ---------------------------------------------------------------------------


def midpoint_density_oracle(points, eps):
    """Independent circle oracle: the farthest point from the sample is a
    midpoint of a gap between consecutive sample values."""
    vals = sorted({p.value for p in points})
    if not vals:
        return False
    backend = CircleBackend()
    for i, v in enumerate(vals):
        nxt = vals[(i + 1) % len(vals)]
        gap = (nxt - v).mod1() if len(vals) > 1 else QPhi(1)
        mid = CirclePoint(v + gap / 2)
        if not any(backend.dist_le(mid, CirclePoint(w), eps) for w in vals):
            return False
    return True


def test_orbit_density_golden():
    sys = golden_rotation()
    dense, used = orbit_density_check(sys, CirclePoint(QPhi(0)), Fraction(1, 4), 64)
    assert dense and used <= 8
    # oracle agreement on the successful sample
    pts = [circle_rotate(CirclePoint(QPhi(0)), k) for k in range(used)]
    assert midpoint_density_oracle(pts, Fraction(1, 4))
    # and the one-shorter segment is indeed not yet dense
    if used > 1:
        assert not eps_dense(sys.backend, pts[:-1], Fraction(1, 4))


def test_orbit_density_odometer():
    sys = odometer()
    dense, used = orbit_density_check(sys, PadicPoint((), (0,)), Fraction(1, 8), 16)
    assert dense and used == 8


def test_orbit_density_one_point():
    sys = finite_cyclic(1)
    dense, used = orbit_density_check(sys, FinitePoint(0, 1), Fraction(1, 100), 1)
    assert dense and used == 1


def test_orbit_density_budget_exhaustion():
    sys = golden_rotation()
    dense, used = orbit_density_check(sys, CirclePoint(QPhi(0)), Fraction(1, 1000), 5)
    assert not dense and used == 5


def test_cantor_density_bruteforce_oracle():
    sys = odometer()
    rng = random.Random(11)
    for _ in range(10):
        z = sys.backend.random_point(rng)
        pts = []
        w = z
        for _ in range(rng.randrange(1, 20)):
            pts.append(w)
            w = sys.forward(w)
        eps = Fraction(1, 2 ** rng.randrange(1, 4))
        brute = all(
            any(sys.backend.dist_le(PadicPoint(tuple((v >> j) & 1 for j in range(3)), (0,)), p, eps) for p in pts)
            for v in range(8)
        )
        assert eps_dense(sys.backend, pts, eps) == brute


def test_product_density_bucketed():
    backend = ProductBackend(CantorBackend(), FiniteBackend(2))
    pts = [
        PairPoint(PadicPoint((b0, b1), (0,)), FinitePoint(i, 2))
        for b0 in (0, 1)
        for b1 in (0, 1)
        for i in (0, 1)
    ]
    assert eps_dense(backend, pts, Fraction(1, 4))
    assert not eps_dense(backend, pts[:-1], Fraction(1, 4))


def test_torus_density_sweep():
    backend = ProductBackend(CircleBackend(), CircleBackend())
    grid = [
        PairPoint(CirclePoint(QPhi(Fraction(i, 4))), CirclePoint(QPhi(Fraction(j, 4))))
        for i in range(4)
        for j in range(4)
    ]
    assert eps_dense(backend, grid, Fraction(1, 8))
    assert not eps_dense(backend, grid, Fraction(1, 16))
    assert not eps_dense(backend, grid[:-1], Fraction(1, 8))


# ---------------------------------------------------------------------------
# freeness
# ---------------------------------------------------------------------------


def test_freeness_examples():
    assert freeness_check(golden_rotation(), CirclePoint(QPhi(0)), 100) == []
    assert freeness_check(odometer(), PadicPoint((), (0,)), 100) == []
    assert freeness_check(finite_cyclic(3), FinitePoint(0, 3), 7) == [3, 6]


def test_freeness_random_points():
    rng = random.Random(23)
    for sys in (golden_rotation(), odometer()):
        for _ in range(100):
            z = sys.backend.random_point(rng)
            assert freeness_check(sys, z, 50) == []


# ---------------------------------------------------------------------------
# boxes
# ---------------------------------------------------------------------------


def test_arc_membership_exact():
    a = Arc(QPhi(Fraction(3, 4)), QPhi(Fraction(1, 2)))  # wraps through 0
    assert a.contains(QPhi(Fraction(7, 8)))
    assert a.contains(QPhi(Fraction(1, 8)))
    assert not a.contains(QPhi(Fraction(1, 2)))
    assert not a.contains(QPhi(Fraction(3, 4)))  # open at the start
    assert a.contains(QPhi(Fraction(3, 4)), closed=True)


def test_arc_intersection_wrapping():
    # the wrapping arc (3/4, 5/4) contains (0, 1/4) entirely
    a = CircleBox((Arc(QPhi(Fraction(3, 4)), QPhi(Fraction(1, 2))),))
    b = CircleBox((Arc(QPhi(0), QPhi(Fraction(1, 4))),))
    got = box_intersect(a, b)
    assert len(got.arcs) == 1
    arc = got.arcs[0]
    assert arc.start == QPhi(0) and arc.length == QPhi(Fraction(1, 4))
    # partial overlap through the wrap point
    c = CircleBox((Arc(QPhi(Fraction(7, 8)), QPhi(Fraction(1, 4))),))
    got2 = box_intersect(b, c)
    (piece,) = got2.arcs
    assert piece.start == QPhi(0) and piece.length == QPhi(Fraction(1, 8))


def test_cantor_box_canonical_merge():
    assert CantorBox(((0, 0), (0, 1))).words == ((0,),)
    assert CantorBox(((0,), (1,))).words == ((),)
    assert CantorBox(((0,), (0, 1))).words == ((0,),)


def test_circle_cover_oracle():
    # four overlapping arcs of length 5/16 spaced by 1/4 cover the circle;
    # touching open arcs (length exactly 1/4) do NOT cover the seams
    arcs = tuple(
        Arc(QPhi(Fraction(k, 4)) - QPhi(Fraction(1, 16)), QPhi(Fraction(5, 16)))
        for k in range(4)
    )
    assert circle_covered_by_arcs(arcs, None)
    assert not circle_covered_by_arcs(arcs[:3], None)
    seams = tuple(Arc(QPhi(Fraction(k, 4)), QPhi(Fraction(1, 4))) for k in range(4))
    assert not circle_covered_by_arcs(seams, None)


def test_box_rep_points_inside():
    rng = random.Random(5)
    for backend in (CircleBackend(), CantorBackend(), FiniteBackend(4)):
        for i in range(12):
            box = backend.basic_open(i)
            assert box_contains(box, box_rep_point(box))


def test_basic_open_enumeration_total():
    # every index yields a non-empty box, however deep the enumeration
    rng = random.Random(9)
    backends = [
        CircleBackend(),
        CantorBackend(),
        FiniteBackend(5),
        CountableBackend(),
        ProductBackend(CantorBackend(), CircleBackend()),
    ]
    for backend in backends:
        for _ in range(60):
            i = rng.randrange(10_000)
            if backend.basic_count is not None:
                i %= backend.basic_count
            box = backend.basic_open(i)
            assert box_contains(box, box_rep_point(box))
