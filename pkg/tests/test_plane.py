"""Plane tests: incidence, enumeration, three-point circles, Moebius action."""
import random

import pytest

from miquel.gf import field_make, sqrt_in_ext
from miquel.plane import (INFINITY, Circle, CoincidentPoints, MobiusMap,
                          Point, SingularMap, all_circles, circle_through,
                          enumerate_circles, enumerate_points,
                          mobius_from_three_points, parse_circle, parse_point,
                          random_circle, random_mobius)

F3 = field_make(3)
F5 = field_make(5)
F7 = field_make(7)
F31I = field_make(31, alpha=30)


def standard_pair(spec):
    c = spec.fq2(1, 0)
    return Circle.type2(c, spec.fq(-1)), Circle.type2(c, spec.fq(1))


# -- counts and enumeration ---------------------------------------------------

@pytest.mark.parametrize("spec,total", [(F3, 30), (F7, 350), (F31I, 29822)])
def test_circle_counts(spec, total):
    q = spec.q
    assert q * q * (q - 1) + q * (q + 1) == total
    circles = all_circles(spec)
    assert len(circles) == total
    assert len(set(circles)) == total


def test_point_counts():
    assert sum(1 for _ in enumerate_points(F3)) == 10
    assert sum(1 for _ in enumerate_points(F7)) == 50
    pts = list(enumerate_points(F3))
    assert pts[-1] is INFINITY


def test_enumeration_is_deterministic():
    first = [c.text() for c in enumerate_circles(F5)]
    second = [c.text() for c in enumerate_circles(F5)]
    assert first == second


# -- canonicalization ---------------------------------------------------------

def test_type2_scaling_classes_collapse():
    c, r = F7.fq2(3, 5), F7.fq(4)
    base = Circle.type2(c, r)
    for lam in range(1, 7):
        scaled = Circle.type2(c * F7.fq(lam), r * F7.fq(lam))
        assert scaled == base
        assert hash(scaled) == hash(base)
    # canonicalization is idempotent
    again = Circle.type2(base.c, base.r)
    assert again == base and again.c == base.c and again.r == base.r


def test_type2_canonical_leading_one():
    for C in all_circles(F5):
        if C.kind == 2:
            lead = C.c.x if not C.c.x.is_zero() else C.c.y
            assert lead == F5.one


def test_circle_parameter_validation():
    with pytest.raises(Exception):
        Circle.type1(F7.fq2(0, 0), F7.fq(0))
    with pytest.raises(Exception):
        Circle.type2(F7.fq2(0, 0), F7.fq(1))


# -- incidence ----------------------------------------------------------------

def test_incidence_examples():
    b0 = Circle.type2(F7.fq2(1, 0), F7.fq(0))   # z + conj(z) = 0
    assert b0.incident(Point(F7.fq2(0, 0)))
    assert b0.incident(INFINITY)
    c1 = Circle.type1(F7.fq2(2, 1), F7.fq(3))
    assert not c1.incident(INFINITY)


def test_worked_first_type_circle_has_qplus1_points():
    # scan all q^2 finite candidates for norm(z - c) = r
    C = Circle.type1(F31I.fq2(8, 3), F31I.fq(14))
    hits = [z for z in F31I.ext_elements() if (z - C.c).norm() == C.r]
    assert len(hits) == 32
    assert set(C.points()) == {Point(z) for z in hits}


@pytest.mark.parametrize("spec", [F3, F5, F7])
def test_all_circles_have_qplus1_points(spec):
    for C in all_circles(spec):
        pts = C.points()
        assert len(pts) == spec.q + 1
        assert all(C.incident(P) for P in pts)
        assert (INFINITY in pts) == (C.kind == 2)


def test_trace_zero_circle_in_m3():
    b0 = Circle.type2(F3.fq2(1, 0), F3.fq(0))
    expected = {Point(F3.fq2(0, y)) for y in range(3)} | {INFINITY}
    assert set(b0.points()) == expected


def test_first_type_point_count_square_and_nonsquare_radius():
    for r in (1, 2, 3):  # mod 7: 1, 2 squares; 3 nonsquare
        C = Circle.type1(F7.fq2(4, 2), F7.fq(r))
        assert len(C.points()) == 8


# -- circle through three points ----------------------------------------------

def test_circle_through_zero_one_infinity():
    P, Q = Point(F7.fq2(0, 0)), Point(F7.fq2(1, 0))
    C = circle_through(P, Q, INFINITY)
    assert C.kind == 2
    assert C.incident(P) and C.incident(Q) and C.incident(INFINITY)


def test_circle_through_zero_sqrtalpha_infinity():
    w = Point(F7.fq2(0, 1))
    C = circle_through(Point(F7.fq2(0, 0)), w, INFINITY)
    assert C == Circle.type2(F7.fq2(1, 0), F7.fq(0))


def test_circle_through_roundtrip_first_type():
    for C in (Circle.type1(F7.fq2(3, 4), F7.fq(2)),
              Circle.type1(F5.fq2(1, 2), F5.fq(4)),
              Circle.type2(F7.fq2(2, 3), F7.fq(6))):
        pts = C.points()
        assert circle_through(pts[0], pts[1], pts[2]) == C
        assert circle_through(pts[2], pts[0], pts[1]) == C


def test_circle_through_rejects_coincident():
    P = Point(F7.fq2(1, 1))
    with pytest.raises(CoincidentPoints):
        circle_through(P, P, INFINITY)


def test_unique_circle_through_triples_exhaustive_m3():
    circles = all_circles(F3)
    pts = list(enumerate_points(F3))
    import itertools
    for trip in itertools.combinations(pts, 3):
        C = circle_through(*trip)
        assert all(C.incident(P) for P in trip)
        others = [D for D in circles if D != C and all(D.incident(P) for P in trip)]
        assert not others


# -- Moebius maps -------------------------------------------------------------

def test_translation_fixes_standard_tangent_pair():
    step = sqrt_in_ext(F7.fq(-1))
    T = MobiusMap(F7.ext_one, step, F7.ext_zero, F7.ext_one)
    b_minus, b_plus = standard_pair(F7)
    assert T.apply_circle(b_minus) == b_minus
    assert T.apply_circle(b_plus) == b_plus


def test_identity_fixes_circles_and_canonical_form():
    I = MobiusMap.identity(F7)
    assert I.a == F7.ext_one and I.d == F7.ext_one
    assert I.b.is_zero() and I.c.is_zero()
    rng = random.Random(3)
    for _ in range(20):
        C = random_circle(F7, rng)
        assert I.apply_circle(C) == C


def test_singular_map_rejected():
    with pytest.raises(SingularMap):
        MobiusMap(F7.ext_one, F7.ext_one, F7.ext_one, F7.ext_one)


def test_one_over_z_swaps_zero_and_infinity():
    zero, one = Point(F7.fq2(0, 0)), Point(F7.fq2(1, 0))
    T = mobius_from_three_points((zero, one, INFINITY), (INFINITY, one, zero))
    assert T(zero) == INFINITY
    assert T(INFINITY) == zero
    three = Point(F7.fq2(3, 0))
    assert T(three) == Point(F7.fq2(3, 0).inverse())


def test_from_three_points_identity_and_roundtrip():
    pts = (Point(F7.fq2(2, 1)), Point(F7.fq2(0, 3)), INFINITY)
    I = mobius_from_three_points(pts, pts)
    assert I == MobiusMap.identity(F7)
    rng = random.Random(11)
    finite = [Point(z) for z in F7.ext_elements()]
    universe = finite + [INFINITY]
    for _ in range(50):
        src = tuple(rng.sample(universe, 3))
        dst = tuple(rng.sample(universe, 3))
        T = mobius_from_three_points(src, dst)
        assert tuple(T(P) for P in src) == dst


def test_from_three_points_rejects_coincident():
    P, Q = Point(F7.fq2(1, 0)), Point(F7.fq2(2, 0))
    with pytest.raises(CoincidentPoints):
        mobius_from_three_points((P, P, Q), (P, Q, INFINITY))


def test_compose_and_inverse():
    rng = random.Random(5)
    for _ in range(25):
        T = random_mobius(F7, rng)
        S = random_mobius(F7, rng)
        P = Point(F7.fq2(rng.randrange(7), rng.randrange(7)))
        assert S.compose(T)(P) == S(T(P))
        assert T.inverse()(T(P)) == P
        assert T.compose(T.inverse()) == MobiusMap.identity(F7)


def test_transport_matches_point_reconstruction():
    rng = random.Random(202)
    for spec in (F5, F7):
        for _ in range(150):
            T = random_mobius(spec, rng)
            C = random_circle(spec, rng)
            assert T.apply_circle(C) == T.apply_circle_by_points(C)


def test_moebius_preserves_incidence():
    rng = random.Random(77)
    for _ in range(200):
        T = random_mobius(F7, rng)
        C = random_circle(F7, rng)
        img = T.apply_circle(C)
        for P in C.points():
            assert img.incident(T(P))


# -- text grammar -------------------------------------------------------------

def test_circle_text_roundtrip():
    for C in (Circle.type1(F7.fq2(3, 2), F7.fq(5)),
              Circle.type2(F7.fq2(0, 4), F7.fq(6)),
              Circle.type1(F31I.fq2(8, 3), F31I.fq(14))):
        assert parse_circle(C.spec, C.text()) == C


def test_circle_text_roundtrip_m2():
    F9 = field_make(3, 2)
    C = Circle.type1(F9.fq2((1, 2), (0, 1)), F9.fq((2, 0)))
    assert C.text() == "B1(c=1,2+0,1*w,r=2,0)"
    assert parse_circle(F9, C.text()) == C


def test_point_text_roundtrip():
    assert parse_point(F7, "inf") == INFINITY
    P = Point(F7.fq2(4, 6))
    assert parse_point(F7, P.text()) == P


def test_parse_circle_rejects_garbage():
    for bad in ("B3(c=1+0*w,r=1)", "B1(c=1+0*w)", "circle", "B1(c=1+0*w,r=0,x=2)"):
        with pytest.raises(Exception):
            parse_circle(F7, bad)
