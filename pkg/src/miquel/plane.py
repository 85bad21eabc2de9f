"""Points, circles and Moebius transformations of the Miquelian plane M(q).

Points are the q^2 elements of GF(q^2) plus one point at infinity.  Circles
come in two kinds: solutions of norm(z - c) = r (first type, never through
infinity) and solutions of trace(conj(c) * z) = r together with infinity
(second type).  Second-type parameters are only defined up to a GF(q)\\{0}
scale, so they are stored canonically: the first nonzero entry of
(c.x, c.y, r) is normalized to 1, which makes circle equality a plain value
comparison.

Moebius maps z -> (az + b)/(cz + d) act on points through the usual case
table and on circles through coefficient transport of the defining
equation; a point-sampling reconstruction is provided as an independent
cross-check path.
"""
from __future__ import annotations

import functools
from typing import Iterable, Iterator, Optional, Sequence

from .gf import (FieldSpec, Fq, Fq2, FieldError, DivisionByZero,
                 parse_fq, parse_fq2)


class CoincidentPoints(ValueError):
    pass


class SingularMap(ValueError):
    pass


INFINITY_TEXT = "inf"


class Point:
    """A point of M(q): a GF(q^2) value or the point at infinity (z is None)."""

    __slots__ = ("z",)

    def __init__(self, z: Optional[Fq2] = None):
        self.z = z

    @property
    def is_infinity(self) -> bool:
        return self.z is None

    def key(self):
        # infinity sorts after every finite point
        if self.z is None:
            return (1, (), ())
        return (0,) + self.z.key()

    def __eq__(self, other):
        if not isinstance(other, Point):
            return NotImplemented
        return self.z == other.z if (self.z is not None and other.z is not None) \
            else self.z is None and other.z is None

    def __hash__(self):
        return hash(None) if self.z is None else hash(self.z)

    def text(self) -> str:
        return INFINITY_TEXT if self.z is None else self.z.text()

    def __str__(self):
        return self.text()

    def __repr__(self):
        return f"Point({self.text()})"


INFINITY = Point(None)


def parse_point(spec: FieldSpec, text: str) -> Point:
    text = text.strip()
    if text == INFINITY_TEXT:
        return INFINITY
    return Point(parse_fq2(spec, text))


class Circle:
    """A circle of M(q).  kind 1: norm(z - c) = r with r != 0.
    kind 2: trace(conj(c) * z) = r with c != 0, plus infinity; stored in
    canonical scaled form."""

    __slots__ = ("kind", "c", "r")

    def __init__(self, kind: int, c: Fq2, r: Fq):
        self.kind = kind
        self.c = c
        self.r = r

    @classmethod
    def type1(cls, c: Fq2, r: Fq) -> "Circle":
        if r.is_zero():
            raise FieldError("first-type circle needs a nonzero radius")
        return cls(1, c, r)

    @classmethod
    def type2(cls, c: Fq2, r: Fq) -> "Circle":
        if c.is_zero():
            raise FieldError("second-type circle needs a nonzero center")
        lam = (c.x if not c.x.is_zero() else c.y).inverse()
        return cls(2, c * lam, r * lam)

    @property
    def spec(self) -> FieldSpec:
        return self.c.spec

    def key(self):
        return (self.kind,) + self.c.key() + (self.r.key(),)

    def __eq__(self, other):
        if not isinstance(other, Circle):
            return NotImplemented
        return self.kind == other.kind and self.c == other.c and self.r == other.r

    def __hash__(self):
        return hash((self.kind, self.c, self.r.coeffs))

    def incident(self, P: Point) -> bool:
        if self.kind == 1:
            if P.is_infinity:
                return False
            return (P.z - self.c).norm() == self.r
        if P.is_infinity:
            return True
        return (self.c.conj() * P.z).trace() == self.r

    def points(self) -> tuple[Point, ...]:
        """All q + 1 incident points, in canonical order."""
        return tuple(sorted(self._iter_points(), key=Point.key))

    def _iter_points(self) -> Iterator[Point]:
        spec = self.spec
        half = spec.fq(2).inverse()
        if self.kind == 2:
            yield INFINITY
            cx, cy = self.c.x, self.c.y
            rh = self.r * half
            if not cx.is_zero():
                cxi = cx.inverse()
                for y in spec.elements():
                    x = (rh + spec.alpha * cy * y) * cxi
                    yield Point(Fq2(x, y))
            else:
                y = -(rh / (spec.alpha * cy))
                for x in spec.elements():
                    yield Point(Fq2(x, y))
            return
        for wx in spec.elements():
            t = (wx * wx - self.r) / spec.alpha
            s = t.sqrt()
            if s is None:
                continue
            yield Point(self.c + Fq2(wx, s))
            if not s.is_zero():
                yield Point(self.c + Fq2(wx, -s))

    def three_points(self) -> tuple[Point, Point, Point]:
        """Three distinct incident points (cheaper than a full points() call)."""
        out = []
        for P in self._iter_points():
            if P not in out:
                out.append(P)
                if len(out) == 3:
                    return tuple(out)
        raise FieldError("circle has fewer than three points")

    def text(self) -> str:
        return f"B{self.kind}(c={self.c.text()},r={self.r.text()})"

    def __str__(self):
        return self.text()

    def __repr__(self):
        return f"Circle({self.text()})"


def parse_circle(spec: FieldSpec, text: str) -> Circle:
    """Inverse of Circle.text()."""
    t = text.strip()
    if not (t.startswith("B1(c=") or t.startswith("B2(c=")) or not t.endswith(")"):
        raise FieldError(f"bad circle literal: {text!r}")
    kind = int(t[1])
    body = t[5:-1]
    if ",r=" not in body:
        raise FieldError(f"bad circle literal: {text!r}")
    c_text, r_text = body.rsplit(",r=", 1)
    c = parse_fq2(spec, c_text)
    r = parse_fq(spec, r_text)
    return Circle.type1(c, r) if kind == 1 else Circle.type2(c, r)


# ---------------------------------------------------------------------------
# circle through three points

def _kernel_basis(rows: list[list[Fq]], spec: FieldSpec) -> list[list[Fq]]:
    """Basis of the nullspace of a small matrix over GF(q)."""
    rows = [list(r) for r in rows]
    ncols = len(rows[0])
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        pivot_row = None
        for i in range(rank, len(rows)):
            if not rows[i][col].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
        inv = rows[rank][col].inverse()
        rows[rank] = [v * inv for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and not rows[i][col].is_zero():
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(rows):
            break
    basis = []
    for free_col in (c for c in range(ncols) if c not in pivots):
        vec = [spec.zero] * ncols
        vec[free_col] = spec.one
        for r_idx, p_col in enumerate(pivots):
            vec[p_col] = -rows[r_idx][free_col]
        basis.append(vec)
    return basis


def _incidence_row(P: Point, spec: FieldSpec) -> list[Fq]:
    # circle equation A*norm(z) + 2*bx*zx - 2*alpha*by*zy + C = 0,
    # unknowns (A, bx, by, C); infinity forces A = 0.
    if P.is_infinity:
        return [spec.one, spec.zero, spec.zero, spec.zero]
    z = P.z
    two = spec.fq(2)
    return [z.norm(), two * z.x, -(two * spec.alpha * z.y), spec.one]


def circle_through(P: Point, Q: Point, R: Point) -> Circle:
    """The unique circle through three pairwise distinct points."""
    if P == Q or P == R or Q == R:
        raise CoincidentPoints("need three pairwise distinct points")
    spec = next(pt.z.spec for pt in (P, Q, R) if not pt.is_infinity)
    basis = _kernel_basis([_incidence_row(pt, spec) for pt in (P, Q, R)], spec)
    if len(basis) != 1:
        raise FieldError("no unique circle through the given points")
    a, bx, by, c0 = basis[0]
    if not a.is_zero():
        center = Fq2(-(bx / a), -(by / a))
        r = center.norm() - c0 / a
        return Circle.type1(center, r)
    return Circle.type2(Fq2(bx, by), -c0)


# ---------------------------------------------------------------------------
# Moebius transformations

class MobiusMap:
    """z -> (az + b)/(cz + d) with ad - bc != 0, stored in canonical scaling
    (first nonzero coefficient of (a, b, c, d) equals 1)."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a: Fq2, b: Fq2, c: Fq2, d: Fq2):
        det = a * d - b * c
        if det.is_zero():
            raise SingularMap("ad - bc = 0")
        for coeff in (a, b, c, d):
            if not coeff.is_zero():
                lam = coeff.inverse()
                break
        self.a = a * lam
        self.b = b * lam
        self.c = c * lam
        self.d = d * lam

    @classmethod
    def identity(cls, spec: FieldSpec) -> "MobiusMap":
        return cls(spec.ext_one, spec.ext_zero, spec.ext_zero, spec.ext_one)

    @property
    def spec(self) -> FieldSpec:
        return self.a.spec

    def __eq__(self, other):
        if not isinstance(other, MobiusMap):
            return NotImplemented
        return (self.a, self.b, self.c, self.d) == (other.a, other.b, other.c, other.d)

    def __hash__(self):
        return hash((self.a, self.b, self.c, self.d))

    def __call__(self, P: Point) -> Point:
        if P.is_infinity:
            if self.c.is_zero():
                return INFINITY
            return Point(self.a / self.c)
        den = self.c * P.z + self.d
        if den.is_zero():
            return INFINITY
        return Point((self.a * P.z + self.b) / den)

    def compose(self, other: "MobiusMap") -> "MobiusMap":
        """The map sending z to self(other(z))."""
        return MobiusMap(self.a * other.a + self.b * other.c,
                         self.a * other.b + self.b * other.d,
                         self.c * other.a + self.d * other.c,
                         self.c * other.b + self.d * other.d)

    def inverse(self) -> "MobiusMap":
        return MobiusMap(self.d, -self.b, -self.c, self.a)

    def _equation(self, C: Circle) -> tuple[Fq, Fq2, Fq]:
        # defining equation A*z*conj(z) + conj(B)*z + B*conj(z) + C0 = 0
        spec = C.spec
        if C.kind == 1:
            return spec.one, -C.c, C.c.norm() - C.r
        return spec.zero, C.c, -C.r

    def apply_circle(self, C: Circle) -> Circle:
        """Image circle via coefficient transport of the defining equation."""
        A, B, C0 = self._equation(C)
        # substitute z = inverse(w) = (e*w + f)/(g*w + h) and clear denominators
        e, f, g, h = self.d, -self.b, -self.c, self.a
        Bc = B.conj()
        A2 = A * e.norm() + (Bc * e * g.conj()).trace() + C0 * g.norm()
        B2 = (A * (e * f.conj()) + Bc * (e * h.conj())
              + B * (f.conj() * g) + C0 * (g * h.conj())).conj()
        C2 = A * f.norm() + (Bc * f * h.conj()).trace() + C0 * h.norm()
        if not A2.is_zero():
            center = -(B2 / A2)
            r = center.norm() - C2 / A2
            return Circle.type1(center, r)
        return Circle.type2(B2, -C2)

    def apply_circle_by_points(self, C: Circle) -> Circle:
        """Image circle reconstructed from three mapped points; independent
        of apply_circle and kept as a cross-check."""
        P, Q, R = C.three_points()
        return circle_through(self(P), self(Q), self(R))

    def text(self) -> str:
        return (f"({self.a.text()})z+({self.b.text()}) / "
                f"({self.c.text()})z+({self.d.text()})")

    def __repr__(self):
        return f"MobiusMap[{self.text()}]"


def _to_zero_one_infinity(z1: Point, z2: Point, z3: Point) -> MobiusMap:
    """The unique map with z1 -> 0, z2 -> 1, z3 -> infinity."""
    spec = next(pt.z.spec for pt in (z1, z2, z3) if not pt.is_infinity)
    one, zero = spec.ext_one, spec.ext_zero
    if z1.is_infinity:
        return MobiusMap(zero, z2.z - z3.z, one, -z3.z)
    if z2.is_infinity:
        return MobiusMap(one, -z1.z, one, -z3.z)
    if z3.is_infinity:
        return MobiusMap(one, -z1.z, zero, z2.z - z1.z)
    k1 = z2.z - z3.z
    k2 = z2.z - z1.z
    return MobiusMap(k1, -(z1.z * k1), k2, -(z3.z * k2))


def mobius_from_three_points(src: Sequence[Point], dst: Sequence[Point]) -> MobiusMap:
    """The unique Moebius map sending src[i] to dst[i] for i = 0, 1, 2."""
    for triple in (src, dst):
        if len(triple) != 3 or len({p.key() for p in triple}) != 3:
            raise CoincidentPoints("need two triples of pairwise distinct points")
    return _to_zero_one_infinity(*dst).inverse().compose(_to_zero_one_infinity(*src))


# ---------------------------------------------------------------------------
# enumeration

def enumerate_points(spec: FieldSpec) -> Iterator[Point]:
    """All q^2 + 1 points, finite ones first in canonical order."""
    for z in spec.ext_elements():
        yield Point(z)
    yield INFINITY


def enumerate_circles(spec: FieldSpec) -> Iterator[Circle]:
    """Every circle exactly once, in canonical form: q^2*(q-1) of the first
    type, then q*(q+1) canonical representatives of the second type."""
    for c in spec.ext_elements():
        for r in spec.elements():
            if not r.is_zero():
                yield Circle.type1(c, r)
    one = spec.one
    for cy in spec.elements():
        for r in spec.elements():
            yield Circle(2, Fq2(one, cy), r)
    for r in spec.elements():
        yield Circle(2, Fq2(spec.zero, one), r)


@functools.lru_cache(maxsize=8)
def all_circles(spec: FieldSpec) -> tuple[Circle, ...]:
    """Memoized full circle list (reused by brute-force scans)."""
    return tuple(enumerate_circles(spec))


# ---------------------------------------------------------------------------
# seeded random helpers (used by property tests and sweeps)

def random_circle(spec: FieldSpec, rng) -> Circle:
    circles = all_circles(spec)
    return circles[rng.randrange(len(circles))]


def random_point(spec: FieldSpec, rng) -> Point:
    n = spec.q * spec.q
    i = rng.randrange(n + 1)
    if i == n:
        return INFINITY
    return Point(Fq2(_random_fq(spec, rng), _random_fq(spec, rng)))


def _random_fq(spec: FieldSpec, rng) -> Fq:
    return Fq(spec, tuple(rng.randrange(spec.p) for _ in range(spec.m)))


def random_mobius(spec: FieldSpec, rng) -> MobiusMap:
    while True:
        coeffs = [Fq2(_random_fq(spec, rng), _random_fq(spec, rng))
                  for _ in range(4)]
        try:
            return MobiusMap(*coeffs)
        except SingularMap:
            continue
