"""Mutual position of two circles and the Moebius-invariant capacitance.

The trichotomy comes from the sign of a discriminant D in GF(q): a nonzero
square means the circles are disjoint, zero means they touch, a nonsquare
means they intersect in two points (whose coordinates involve a square root
of D taken in GF(q^2) \\ GF(q)).  Two second-type circles always share the
point at infinity and have no discriminant: they either touch there or meet
in one more finite point.

The capacitance is a GF(q) number attached to a circle pair that is
unchanged by every Moebius transformation; it is scale-invariant in the
second-type parameters.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .gf import Fq, Fq2, sqrt_in_ext
from .plane import Circle, Point, INFINITY


class IdenticalCircles(ValueError):
    pass


@dataclass(frozen=True)
class MutualPosition:
    kind: str                      # "disjoint" | "tangent" | "intersecting"
    points: tuple[Point, ...]      # (), (touch,) or (first, second)
    discriminant: Optional[Fq]     # absent for a second-type/second-type pair

    @property
    def is_disjoint(self) -> bool:
        return self.kind == "disjoint"

    @property
    def is_tangent(self) -> bool:
        return self.kind == "tangent"

    @property
    def is_intersecting(self) -> bool:
        return self.kind == "intersecting"


def _trichotomy(D: Fq, touch_at, intersect_at) -> MutualPosition:
    if D.is_zero():
        return MutualPosition("tangent", (touch_at(),), D)
    if D.is_square():
        return MutualPosition("disjoint", (), D)
    root = sqrt_in_ext(D)
    return MutualPosition("intersecting", intersect_at(root), D)


def _classify_11(C1: Circle, C2: Circle) -> MutualPosition:
    spec = C1.spec
    c = C2.c - C1.c
    n = c.norm()
    num = n + C1.r - C2.r
    D = num * num - spec.fq(4) * n * C1.r

    def touch():
        return Point(spec.embed(num) / (c.conj() * spec.fq(2)) + C1.c)

    def meet(root: Fq2):
        den = (c.conj() * spec.fq(2)).inverse()
        base = spec.embed(num)
        return (Point((base + root) * den + C1.c),
                Point((base - root) * den + C1.c))

    return _trichotomy(D, touch, meet)


def _classify_12(C1: Circle, C2: Circle) -> MutualPosition:
    # C1 first type, C2 second type
    spec = C1.spec
    r = C2.r - (C1.c * C2.c.conj()).trace()
    D = r * r - spec.fq(4) * C2.c.norm() * C1.r

    def touch():
        return Point(spec.embed(r) / (C2.c.conj() * spec.fq(2)) + C1.c)

    def meet(root: Fq2):
        den = (C2.c.conj() * spec.fq(2)).inverse()
        base = spec.embed(r)
        return (Point((base + root) * den + C1.c),
                Point((base - root) * den + C1.c))

    return _trichotomy(D, touch, meet)


def _classify_22(C1: Circle, C2: Circle) -> MutualPosition:
    t = C1.c * C2.c.conj() - C1.c.conj() * C2.c
    if t.is_zero():
        return MutualPosition("tangent", (INFINITY,), None)
    z0 = (C1.c * C2.r - C2.c * C1.r) / t
    return MutualPosition("intersecting", (INFINITY, Point(z0)), None)


def classify(C1: Circle, C2: Circle) -> MutualPosition:
    """Mutual position of two distinct circles, with contact points."""
    if C1 == C2:
        raise IdenticalCircles("mutual position needs two distinct circles")
    if C1.kind == 1 and C2.kind == 1:
        return _classify_11(C1, C2)
    if C1.kind == 1 and C2.kind == 2:
        return _classify_12(C1, C2)
    if C1.kind == 2 and C2.kind == 1:
        return _classify_12(C2, C1)
    return _classify_22(C1, C2)


def capacitance(C1: Circle, C2: Circle) -> Fq:
    """The Moebius-invariant GF(q) number of a pair of distinct circles."""
    if C1 == C2:
        raise IdenticalCircles("capacitance needs two distinct circles")
    if C1.kind == 2 and C2.kind == 1:
        C1, C2 = C2, C1
    if C1.kind == 1 and C2.kind == 1:
        t = C1.r + C2.r - (C1.c - C2.c).norm()
        return t * t / (C1.r * C2.r)
    if C1.kind == 1 and C2.kind == 2:
        t = (C1.c * C2.c.conj()).trace() - C2.r
        return t * t / (C1.r * C2.c.norm())
    t = (C1.c * C2.c.conj()).trace()
    return t * t / (C1.c.norm() * C2.c.norm())
