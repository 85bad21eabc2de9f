"""Position tests: trichotomy, contact points, capacitance and its invariance."""
import random

import pytest

from miquel.gf import field_make, sqrt_in_ext
from miquel.plane import (Circle, INFINITY, all_circles, random_circle,
                          random_mobius)
from miquel.position import IdenticalCircles, capacitance, classify

F3 = field_make(3)
F5 = field_make(5)
F7 = field_make(7)
F11 = field_make(11)
F31I = field_make(31, alpha=30)


def worked_pair():
    return (Circle.type1(F31I.fq2(8, 3), F31I.fq(14)),
            Circle.type2(F31I.fq2(12, 5), F31I.fq(17)))


# -- worked example -----------------------------------------------------------

def test_worked_pair_intersects_with_nonsquare_discriminant():
    C1, C2 = worked_pair()
    pos = classify(C1, C2)
    assert pos.is_intersecting
    assert pos.discriminant is not None and not pos.discriminant.is_square()
    # raw parameters (c=12+5w, r=17) give D = 12^2 - 4*14*14 = 11; the stored
    # canonical representative is scaled by lambda = 1/12, so D picks up
    # lambda^2 = 14 and the square class is what carries meaning
    assert pos.discriminant == F31I.fq(14) * F31I.fq(11)
    assert not F31I.fq(11).is_square()
    for P in pos.points:
        assert C1.incident(P) and C2.incident(P)


def test_worked_pair_capacitance_is_two():
    C1, C2 = worked_pair()
    assert capacitance(C1, C2) == F31I.fq(2)
    assert capacitance(C2, C1) == F31I.fq(2)


# -- tangency examples --------------------------------------------------------

def test_standard_pair_tangent_at_infinity():
    for spec in (F5, F7):
        c = spec.fq2(1, 0)
        b_minus = Circle.type2(c, spec.fq(-1))
        b_plus = Circle.type2(c, spec.fq(1))
        pos = classify(b_minus, b_plus)
        assert pos.is_tangent and pos.points == (INFINITY,)
        assert pos.discriminant is None
        assert capacitance(b_minus, b_plus) == spec.fq(4)


def test_pencil_neighbours_touch():
    # first-type circles with centers 0 and sqrt(-1), radius 1/4
    for spec in (F7, F11):
        quarter = spec.fq(4).inverse()
        root = sqrt_in_ext(spec.fq(-1))
        A = Circle.type1(spec.fq2(0, 0), quarter)
        B = Circle.type1(root, quarter)
        pos = classify(A, B)
        assert pos.is_tangent
        assert A.incident(pos.points[0]) and B.incident(pos.points[0])


def test_two_second_type_circles_meeting_twice():
    A = Circle.type2(F7.fq2(1, 0), F7.fq(0))
    B = Circle.type2(F7.fq2(0, 1), F7.fq(0))
    pos = classify(A, B)
    assert pos.is_intersecting
    assert INFINITY in pos.points
    finite = next(P for P in pos.points if not P.is_infinity)
    assert A.incident(finite) and B.incident(finite)


def test_identical_circles_raise():
    A = Circle.type1(F7.fq2(1, 1), F7.fq(2))
    with pytest.raises(IdenticalCircles):
        classify(A, A)
    with pytest.raises(IdenticalCircles):
        capacitance(A, A)


# -- capacitance formulas -----------------------------------------------------

def test_capacitance_second_type_conjugate_pair_kappa_zero():
    # trace(gamma^2) = 0 makes the numerator vanish
    g = F7.fq2(2, 1)
    assert (g * g).trace().is_zero()
    A, B = Circle.type2(g, F7.fq(0)), Circle.type2(g.conj(), F7.fq(0))
    assert capacitance(A, B).is_zero()


def test_capacitance_scale_invariance_second_type():
    c, r = F7.fq2(3, 5), F7.fq(4)
    other = Circle.type1(F7.fq2(1, 1), F7.fq(2))
    base = capacitance(Circle.type2(c, r), other)
    for lam in range(2, 7):
        scaled = Circle.type2(c * F7.fq(lam), r * F7.fq(lam))
        assert capacitance(scaled, other) == base


def test_capacitance_concentric_first_type():
    # norm-difference term drops out: kappa = (r1 + r2)^2 / (r1 r2)
    r1, r2 = F7.fq(2), F7.fq(3)
    A = Circle.type1(F7.fq2(1, 4), r1)
    B = Circle.type1(F7.fq2(1, 4), r2)
    assert capacitance(A, B) == (r1 + r2) * (r1 + r2) / (r1 * r2)


# -- trichotomy against ground truth -------------------------------------------

@pytest.mark.parametrize("spec", [F3, F5, F7])
def test_trichotomy_matches_common_point_count(spec):
    circles = all_circles(spec)
    point_sets = [frozenset(C.points()) for C in circles]
    expected = {0: "disjoint", 1: "tangent", 2: "intersecting"}
    for i in range(len(circles)):
        for j in range(i + 1, len(circles)):
            pos = classify(circles[i], circles[j])
            common = len(point_sets[i] & point_sets[j])
            assert pos.kind == expected[common]
            assert len(pos.points) == common
            for P in pos.points:
                assert circles[i].incident(P) and circles[j].incident(P)


def test_classify_symmetric():
    rng = random.Random(9)
    for _ in range(300):
        A = random_circle(F7, rng)
        B = random_circle(F7, rng)
        if A == B:
            continue
        p1, p2 = classify(A, B), classify(B, A)
        assert p1.kind == p2.kind
        assert set(p1.points) == set(p2.points)


# -- Moebius invariance ---------------------------------------------------------

@pytest.mark.parametrize("spec", [F5, F7, F11])
def test_capacitance_moebius_invariance(spec):
    rng = random.Random(1000 + spec.q)
    for _ in range(300):
        A = random_circle(spec, rng)
        B = random_circle(spec, rng)
        while B == A:
            B = random_circle(spec, rng)
        T = random_mobius(spec, rng)
        assert capacitance(A, B) == capacitance(T.apply_circle(A), T.apply_circle(B))


def test_classification_moebius_invariance():
    rng = random.Random(31)
    for _ in range(200):
        A = random_circle(F7, rng)
        B = random_circle(F7, rng)
        if A == B:
            continue
        T = random_mobius(F7, rng)
        before = classify(A, B)
        after = classify(T.apply_circle(A), T.apply_circle(B))
        assert before.kind == after.kind
        assert {T(P) for P in before.points} == set(after.points)
