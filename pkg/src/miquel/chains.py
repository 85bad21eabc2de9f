"""Steiner chains on tangent, intersecting and disjoint carrier circles.

A Steiner chain of length k >= 3 is a cyclic sequence of distinct circles,
consecutive ones tangent, all tangent to both carriers, with no point
serving as contact point of more than two of the tangent circles (carriers
included).  The last clause is what rejects degenerate configurations whose
contact points pile up on a carrier.

Closed-form criteria predict existence, number and length of chains from
the field size and the capacitance of the carrier pair:

* tangent carriers: chains exist iff q = 3 (mod 4); there are p^(m-1) of
  them, each of length p, built by translating a starter circle by a square
  root of -1;
* intersecting carriers: existence is governed by the capacitance kappa,
  chain lengths by multiplicative orders of the generators
  w = (2 + sqrt(s))/(2 - sqrt(s)) for s = +/-sqrt(kappa) + 2 (with
  3 + 2*sqrt(2) in the kappa = 0 case, which requires p = 7 mod 16);
* disjoint carriers: only an existence/length criterion is known, phrased
  through b = (c - 2 + sqrt(c(c-4)))/2 and the orders of a norm-1 value xi
  built from each square root of b.

Predictions are independent of the constructions and of the brute-force
oracle, which makes three mutually checking routes.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional, Sequence, Union

from .gf import FieldSpec, Fq, Fq2, FieldError, sqrt_in_ext
from .plane import (Circle, Point, MobiusMap, INFINITY,
                    mobius_from_three_points)
from .position import IdenticalCircles, classify, capacitance


class NotTangent(ValueError):
    pass


class NotIntersecting(ValueError):
    pass


class NotDisjoint(ValueError):
    pass


class NoChains(ValueError):
    pass


class DegenerateGamma(ValueError):
    pass


# ---------------------------------------------------------------------------
# chain values and validation

@dataclass(frozen=True)
class SteinerChain:
    """A cyclic chain of circles.  contacts[i] joins circles[i] and
    circles[i+1] (cyclically); carrier_contacts[i] holds the contact points
    of circles[i] with the two carriers.  Hand-built chains may leave the
    contact data unset; validate_chain recomputes everything it needs."""

    circles: tuple[Circle, ...]
    contacts: Optional[tuple[Point, ...]] = None
    carrier_contacts: Optional[tuple[tuple[Point, Point], ...]] = None

    def __len__(self) -> int:
        return len(self.circles)

    @property
    def length(self) -> int:
        return len(self.circles)

    def circle_set(self) -> frozenset:
        """Chain identity: the set of circles (rotation and reversal do not
        matter)."""
        return frozenset(self.circles)

    @classmethod
    def build(cls, circles: Sequence[Circle], C1: Circle, C2: Circle) -> "SteinerChain":
        """Assemble a chain value with contact data from an already valid
        cyclic circle sequence, in canonical rotation/direction."""
        cyc = _canonical_cycle(tuple(circles))
        k = len(cyc)
        contacts = []
        for i in range(k):
            pos = classify(cyc[i], cyc[(i + 1) % k])
            if not pos.is_tangent:
                raise FieldError("consecutive circles are not tangent")
            contacts.append(pos.points[0])
        carrier = []
        for M in cyc:
            p1, p2 = classify(M, C1), classify(M, C2)
            if not (p1.is_tangent and p2.is_tangent):
                raise FieldError("chain circle is not tangent to both carriers")
            carrier.append((p1.points[0], p2.points[0]))
        return cls(cyc, tuple(contacts), tuple(carrier))

    def to_dict(self) -> dict:
        out = {"circles": [c.text() for c in self.circles]}
        if self.contacts is not None:
            out["contacts"] = [p.text() for p in self.contacts]
        if self.carrier_contacts is not None:
            out["carrier_contacts"] = [[a.text(), b.text()]
                                       for a, b in self.carrier_contacts]
        return out


def _canonical_cycle(circles: tuple[Circle, ...]) -> tuple[Circle, ...]:
    k = len(circles)
    start = min(range(k), key=lambda i: circles[i].key())
    rotated = circles[start:] + circles[:start]
    if k > 2 and rotated[-1].key() < rotated[1].key():
        rotated = (rotated[0],) + tuple(reversed(rotated[1:]))
    return rotated


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    clause: Optional[str] = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


def validate_chain(chain: Union[SteinerChain, Sequence[Circle]],
                   C1: Circle, C2: Circle) -> ValidationReport:
    """Check a candidate chain against the three defining clauses; on
    failure the report names the first violated clause."""
    if C1 == C2:
        raise IdenticalCircles("carriers must be distinct")
    circles = tuple(chain.circles) if isinstance(chain, SteinerChain) else tuple(chain)
    k = len(circles)
    if k < 3:
        return ValidationReport(False, "length", f"chain has {k} circle(s), need at least 3")
    if len(set(circles)) != k:
        return ValidationReport(False, "distinct circles",
                                "a circle appears more than once in the chain")
    for idx, M in enumerate(circles):
        if M == C1 or M == C2:
            return ValidationReport(False, "carrier tangency",
                                    f"chain circle {idx} coincides with a carrier")

    config = circles + (C1, C2)
    n = len(config)
    tangencies: dict[tuple[int, int], Point] = {}
    for i in range(n):
        for j in range(i + 1, n):
            pos = classify(config[i], config[j])
            if pos.is_tangent:
                tangencies[(i, j)] = pos.points[0]

    for i in range(k):
        j = (i + 1) % k
        if (min(i, j), max(i, j)) not in tangencies:
            return ValidationReport(False, "chain tangency",
                                    f"circles {i} and {j} of the chain are not tangent")
    for i in range(k):
        if (i, k) not in tangencies:
            return ValidationReport(False, "carrier tangency",
                                    f"chain circle {i} is not tangent to the first carrier")
        if (i, k + 1) not in tangencies:
            return ValidationReport(False, "carrier tangency",
                                    f"chain circle {i} is not tangent to the second carrier")

    touching: dict[Point, set[int]] = {}
    for (i, j), P in tangencies.items():
        touching.setdefault(P, set()).update((i, j))
    for P in sorted(touching, key=Point.key):
        group = touching[P]
        if len(group) > 2:
            names = ", ".join(
                "carrier 1" if g == k else "carrier 2" if g == k + 1 else f"circle {g}"
                for g in sorted(group))
            return ValidationReport(
                False, "contact points",
                f"point {P.text()} is a contact point of {len(group)} tangent circles ({names})")
    return ValidationReport(True)


# ---------------------------------------------------------------------------
# predictions

class ChainFamily(NamedTuple):
    length: int
    count: int
    generator: str


@dataclass
class ChainPrediction:
    """Predicted census for a carrier pair.  families carries exact
    (length, count, generator) claims; for disjoint carriers only existence
    and admissible lengths are claimed (counts_exact is False and families
    stays empty)."""

    exists: bool
    families: tuple[ChainFamily, ...]
    case_tag: str
    counts_exact: bool
    lengths: tuple[int, ...]
    diagnostics: dict = field(default_factory=dict)

    def __post_init__(self):
        for fam in self.families:
            if fam.count <= 0 or fam.length < 3:
                raise FieldError(f"invalid chain family {fam}")

    @property
    def histogram(self) -> tuple[tuple[int, int], ...]:
        """(length, count) multiset with equal lengths aggregated."""
        agg: dict[int, int] = {}
        for fam in self.families:
            agg[fam.length] = agg.get(fam.length, 0) + fam.count
        return tuple(sorted(agg.items()))

    def to_dict(self) -> dict:
        return {
            "exists": self.exists,
            "case": self.case_tag,
            "counts_exact": self.counts_exact,
            "families": [[f.length, f.count, f.generator] for f in self.families],
            "lengths": list(self.lengths),
            "diagnostics": {k: _jsonable(v) for k, v in sorted(self.diagnostics.items())},
        }


def _jsonable(v):
    if isinstance(v, Fq):
        return v.coeffs[0] if v.spec.m == 1 else v.text()
    if isinstance(v, (Fq2, Point, Circle)):
        return v.text()
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def standard_tangent_pair(spec: FieldSpec) -> tuple[Circle, Circle]:
    """The tangent pair in standard position: z + conj(z) = -1 and = +1,
    touching at infinity."""
    c = spec.fq2(1, 0)
    return Circle.type2(c, spec.fq(-1)), Circle.type2(c, spec.fq(1))


def standard_intersecting_circles(spec: FieldSpec) -> tuple[Circle, ...]:
    """All q + 1 circles through 0 and infinity (canonical forms)."""
    zero = spec.fq(0)
    out = [Circle(2, Fq2(spec.one, cy), zero) for cy in spec.elements()]
    out.append(Circle(2, Fq2(spec.zero, spec.one), zero))
    return tuple(out)


def predict_tangent(spec: FieldSpec) -> ChainPrediction:
    """Chain census for any tangent carrier pair in M(q): p^(m-1) chains of
    length p when q = 3 (mod 4), none when q = 1 (mod 4)."""
    diag = {"p": spec.p, "m": spec.m, "q": spec.q}
    if spec.q % 4 == 3:
        step = sqrt_in_ext(spec.fq(-1))
        diag["translation_step"] = step
        fam = ChainFamily(spec.p, spec.q // spec.p, step.text())
        return ChainPrediction(True, (fam,), "tangent", True, (spec.p,), diag)
    return ChainPrediction(False, (), "tangent", True, (), diag)


def predict_intersecting(C1: Circle, C2: Circle) -> ChainPrediction:
    """Chain census for an intersecting pair, from its capacitance alone."""
    pos = classify(C1, C2)
    if not pos.is_intersecting:
        raise NotIntersecting("carriers do not intersect")
    spec = C1.spec
    q = spec.q
    kappa = capacitance(C1, C2)
    diag: dict = {"kappa": kappa}
    two = spec.fq(2)

    if kappa.is_zero():
        if spec.m % 2 == 1 and spec.p % 16 == 7:
            w0 = spec.fq(3) + two * two.sqrt()
            k = w0.mult_order()
            diag.update({"sqrt_kappa": spec.fq(0), "w": w0, "k": k})
            assert k % 2 == 1 and ((q - 1) // 2) % k == 0
            fam = ChainFamily(k, 2 * (q - 1) // k, w0.text())
            return ChainPrediction(True, (fam,), "intersecting-kappa0", True, (k,), diag)
        return ChainPrediction(False, (), "intersecting-none", True, (), diag)

    sk = kappa.sqrt()
    diag["sqrt_kappa"] = sk
    if sk is None:
        return ChainPrediction(False, (), "intersecting-none", True, (), diag)
    # capacitance 4 would mean a tangent pair, which classify already excluded
    assert kappa != spec.fq(4)
    a_plus = (sk + two).sqrt()
    a_minus = (two - sk).sqrt()

    if q % 4 == 3:
        if a_plus is None:
            assert a_minus is None
            return ChainPrediction(False, (), "intersecting-none", True, (), diag)
        assert a_minus is not None
        w_plus = (two + a_plus) / (two - a_plus)
        w_minus = (two + a_minus) / (two - a_minus)
        k_plus, k_minus = w_plus.mult_order(), w_minus.mult_order()
        diag.update({"w_plus": w_plus, "w_minus": w_minus,
                     "k_plus": k_plus, "k_minus": k_minus})
        for k in (k_plus, k_minus):
            assert k % 2 == 1 and ((q - 1) // 2) % k == 0
        fams = (ChainFamily(k_plus, (q - 1) // k_plus, w_plus.text()),
                ChainFamily(k_minus, (q - 1) // k_minus, w_minus.text()))
        lengths = tuple(sorted({k_plus, k_minus}))
        return ChainPrediction(True, fams, "intersecting-two-families", True, lengths, diag)

    # -1 is a square: exactly one sign gives a square, one family survives
    assert (a_plus is None) != (a_minus is None)
    a = a_plus if a_plus is not None else a_minus
    w = (two + a) / (two - a)
    k = w.mult_order()
    diag.update({"w": w, "k": k,
                 "sign": "+" if a_plus is not None else "-"})
    assert (q - 1) % k == 0 and ((q - 1) // 2) % k != 0
    fam = ChainFamily(k, (q - 1) // k, w.text())
    return ChainPrediction(True, (fam,), "intersecting-single", True, (k,), diag)


def predict_disjoint(C1: Circle, C2: Circle, k_max: Optional[int] = None) -> ChainPrediction:
    """Existence and admissible lengths for a disjoint pair.  No chain
    counts are claimed (the underlying criterion is per starting point), so
    counts_exact is False and families stays empty."""
    pos = classify(C1, C2)
    if not pos.is_disjoint:
        raise NotDisjoint("carriers are not disjoint")
    spec = C1.spec
    if k_max is None:
        k_max = spec.q + 1
    cap = capacitance(C1, C2)
    diag: dict = {"capacitance": cap}
    s = (cap * (cap - spec.fq(4))).sqrt()
    if s is None:
        return ChainPrediction(False, (), "disjoint", False, (), diag)
    b = (cap - spec.fq(2) + s) / spec.fq(2)
    diag["b"] = b
    if b.is_zero() or not b.is_square():
        return ChainPrediction(False, (), "disjoint", False, (), diag)
    mu1 = b.sqrt()
    one, four, six = spec.one, spec.fq(4), spec.fq(6)
    lengths = []
    per_mu = []
    for mu in (mu1, -mu1):
        entry: dict = {"mu": mu}
        if (-mu).is_square():
            entry["admissible"] = False
            per_mu.append(entry)
            continue
        root = sqrt_in_ext(-mu)
        num = spec.embed(-(mu * mu) + six * mu - one) + (four * (mu - one)) * root
        xi = num / ((one + mu) * (one + mu))
        k = xi.mult_order()
        admissible = 3 <= k <= k_max
        entry.update({"xi": xi, "order": k, "admissible": admissible})
        per_mu.append(entry)
        if admissible:
            lengths.append(k)
    diag["per_mu"] = per_mu
    lengths_t = tuple(sorted(set(lengths)))
    return ChainPrediction(bool(lengths_t), (), "disjoint", False, lengths_t, diag)


# ---------------------------------------------------------------------------
# reductions to standard position

def reduce_tangent_pair(C1: Circle, C2: Circle) -> tuple[MobiusMap, tuple[Circle, Circle]]:
    """A Moebius map sending C1 to the standard circle z + conj(z) = -1 and
    C2 to z + conj(z) = +1 (their tangency point goes to infinity)."""
    pos = classify(C1, C2)
    if not pos.is_tangent:
        raise NotTangent("carriers are not tangent")
    spec = C1.spec
    b_minus, b_plus = standard_tangent_pair(spec)
    z0 = pos.points[0]
    src_extra = [P for P in C1.points() if P != z0][:2]
    dst_extra = [P for P in b_minus.points() if not P.is_infinity][:2]
    T1 = mobius_from_three_points((z0, src_extra[0], src_extra[1]),
                                  (INFINITY, dst_extra[0], dst_extra[1]))
    image2 = T1.apply_circle(C2)
    # image2 is tangent to b_minus at infinity, i.e. z + conj(z) = r'
    assert image2.kind == 2 and image2.c == spec.ext_one
    lam = spec.fq(2) / (image2.r + spec.one)
    shift = (lam - spec.one) / spec.fq(2)
    T2 = MobiusMap(spec.embed(lam), spec.embed(shift), spec.ext_zero, spec.ext_one)
    T = T2.compose(T1)
    assert T.apply_circle(C1) == b_minus and T.apply_circle(C2) == b_plus
    return T, (b_minus, b_plus)


def reduce_intersecting_pair(C1: Circle, C2: Circle
                             ) -> Optional[tuple[MobiusMap, tuple[Circle, Circle]]]:
    """A Moebius map sending an intersecting pair to the symmetric standard
    pair of second-type circles with conjugate centers through 0 and
    infinity.  Returns None when the pair has no common tangent circles
    (the center ratio of the 0/infinity images is a nonsquare), in which
    case no Steiner chain exists either."""
    pos = classify(C1, C2)
    if not pos.is_intersecting:
        raise NotIntersecting("carriers do not intersect")
    spec = C1.spec
    z1, z2 = pos.points
    witness = next(P for P in C1.points() if P != z1 and P != z2)
    T0 = mobius_from_three_points(
        (z1, z2, witness),
        (Point(spec.ext_zero), INFINITY, Point(spec.ext_one)))
    S1, S2 = T0.apply_circle(C1), T0.apply_circle(C2)
    assert S1.kind == 2 and S2.kind == 2 and S1.r.is_zero() and S2.r.is_zero()
    ratio = S2.c.conj() / S1.c.conj()
    if not ratio.is_square():
        return None
    gamma = ratio.sqrt()
    scale = MobiusMap(S1.c.conj() * gamma, spec.ext_zero, spec.ext_zero, spec.ext_one)
    T = scale.compose(T0)
    std1 = Circle.type2(gamma, spec.fq(0))
    std2 = Circle.type2(gamma.conj(), spec.fq(0))
    assert std1 != std2
    assert T.apply_circle(C1) == std1 and T.apply_circle(C2) == std2
    return T, (std1, std2)


# ---------------------------------------------------------------------------
# pencils and constructions

def _symmetric_pair_data(C_gamma: Circle, C_gamma_bar: Circle):
    """Extract (gamma, norm, trace, imag part) from a symmetric standard
    pair, checking its shape."""
    spec = C_gamma.spec
    if not (C_gamma.kind == 2 and C_gamma_bar.kind == 2
            and C_gamma.r.is_zero() and C_gamma_bar.r.is_zero()):
        raise FieldError("expected two second-type circles through 0 and infinity")
    gamma = C_gamma.c
    if C_gamma == C_gamma_bar:
        raise DegenerateGamma("gamma^2 = conj(gamma)^2: the pair degenerates")
    if Circle.type2(gamma.conj(), spec.fq(0)) != C_gamma_bar:
        raise FieldError("pair is not conjugate-symmetric")
    return gamma, gamma.norm(), gamma.trace(), gamma.y


def construct_intersecting_chains(C_gamma: Circle, C_gamma_bar: Circle) -> list[SteinerChain]:
    """All Steiner chains on the symmetric standard pair, built family by
    family: centers in GF(q)* multiplied by u (needs the center norm to be
    a square), purely imaginary centers multiplied by v (needs minus the
    norm to be a nonsquare).  Cross-family tangencies exist but put their
    contact point on a carrier, so they are never used."""
    spec = C_gamma.spec
    gamma, n, tr, gy = _symmetric_pair_data(C_gamma, C_gamma_bar)
    two, four = spec.fq(2), spec.fq(4)

    families = []
    s = n.sqrt()
    if s is not None:
        u = (two * s + tr) / (two * s - tr)
        rho = tr * tr / (four * n)
        families.append(("real", u, rho))
    if not (-n).is_square():
        t0 = ((-n) / spec.alpha).sqrt()
        v = (t0 + gy) / (t0 - gy)
        rho = spec.alpha * gy * gy / n
        families.append(("imag", v, rho))
    if not families:
        raise NoChains("neither pencil family admits tangencies")

    chains: list[SteinerChain] = []
    for tag, gen, rho in families:
        k = gen.mult_order()
        used: set[Fq] = set()
        for c0 in spec.elements():
            if c0.is_zero() or c0 in used:
                continue
            orbit = []
            c = c0
            for _ in range(k):
                orbit.append(c)
                c = c * gen
            used.update(orbit)
            if tag == "real":
                circles = tuple(Circle.type1(spec.embed(ci), ci * ci * rho)
                                for ci in orbit)
            else:
                circles = tuple(Circle.type1(Fq2(spec.zero, ci),
                                             spec.alpha * ci * ci * rho)
                                for ci in orbit)
            chain = SteinerChain.build(circles, C_gamma, C_gamma_bar)
            report = validate_chain(chain, C_gamma, C_gamma_bar)
            if not report.ok:
                raise FieldError(f"constructed chain failed validation: {report.detail}")
            chains.append(chain)
    return chains


def construct_tangent_chains(C1: Circle, C2: Circle) -> list[SteinerChain]:
    """All Steiner chains on a tangent pair: reduce to standard position,
    walk the translation orbits of the q-circle pencil, map back."""
    spec = C1.spec
    T, _ = reduce_tangent_pair(C1, C2)
    if spec.q % 4 != 3:
        raise NoChains(f"q = {spec.q} is 1 mod 4: tangent carriers carry no chains")
    T_inv = T.inverse()
    step = sqrt_in_ext(spec.fq(-1))
    assert step.x.is_zero()
    step_y = step.y
    quarter = spec.fq(4).inverse()
    used: set[Fq] = set()
    chains: list[SteinerChain] = []
    for y0 in spec.elements():
        if y0 in used:
            continue
        ys = []
        y = y0
        for _ in range(spec.p):
            ys.append(y)
            y = y + step_y
        used.update(ys)
        circles = tuple(T_inv.apply_circle(Circle.type1(Fq2(spec.zero, t), quarter))
                        for t in ys)
        chain = SteinerChain.build(circles, C1, C2)
        report = validate_chain(chain, C1, C2)
        if not report.ok:
            raise FieldError(f"constructed chain failed validation: {report.detail}")
        chains.append(chain)
    chains.sort(key=lambda ch: ch.circles[0].key())
    return chains


def tangent_pencil(C1: Circle, C2: Circle) -> tuple[Circle, ...]:
    """The circles usable by Steiner chains on the carrier pair.

    Tangent carriers: the q first-type circles with centers on the trace
    zero circle and radius 1/4, transported from standard position.
    Intersecting carriers: the 2(q-1) circles of the two symmetric pencil
    families, or nothing when the square condition fails.  Disjoint
    carriers: exhaustive scan (no closed form is implemented here)."""
    pos = classify(C1, C2)
    spec = C1.spec
    if pos.is_tangent:
        T, _ = reduce_tangent_pair(C1, C2)
        T_inv = T.inverse()
        quarter = spec.fq(4).inverse()
        out = [T_inv.apply_circle(Circle.type1(Fq2(spec.zero, y), quarter))
               for y in spec.elements()]
        return tuple(sorted(out, key=Circle.key))
    if pos.is_intersecting:
        reduced = reduce_intersecting_pair(C1, C2)
        if reduced is None:
            return ()
        T, (std1, std2) = reduced
        gamma, n, tr, gy = _symmetric_pair_data(std1, std2)
        rho_u = tr * tr / (spec.fq(4) * n)
        rho_v = spec.alpha * gy * gy / n
        T_inv = T.inverse()
        out = []
        for c0 in spec.elements():
            if c0.is_zero():
                continue
            out.append(T_inv.apply_circle(
                Circle.type1(spec.embed(c0), c0 * c0 * rho_u)))
            out.append(T_inv.apply_circle(
                Circle.type1(Fq2(spec.zero, c0), spec.alpha * c0 * c0 * rho_v)))
        return tuple(sorted(out, key=Circle.key))
    from .oracle import common_tangents_bruteforce
    return common_tangents_bruteforce(C1, C2)
