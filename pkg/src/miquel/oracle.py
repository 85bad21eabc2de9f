"""Exhaustive ground truth for common tangent circles and Steiner chains.

Everything here is deliberately naive: the pencil comes from scanning every
circle of the plane, the chains from enumerating simple cycles in the
tangency graph of that pencil and validating each candidate against the
chain definition.  None of the closed-form predictions or constructive
routes are consulted, so an agreement between the two sides is evidence,
not circularity.

A circle that touches a carrier exactly at the carriers' own contact point
can never sit in a proper chain (that point would serve three circles), so
for tangent carriers such circles are excluded from the pencil; this keeps
the pencil equal to the set of circles chains can actually use.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .chains import ChainPrediction, SteinerChain, validate_chain
from .plane import Circle, all_circles
from .position import IdenticalCircles, classify


@dataclass
class ChainCensus:
    pencil_size: int
    chains: tuple[SteinerChain, ...]
    histogram: tuple[tuple[int, int], ...]
    circles_covered: int

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(sorted({length for length, _ in self.histogram}))

    def to_dict(self) -> dict:
        return {
            "pencil_size": self.pencil_size,
            "histogram": [list(h) for h in self.histogram],
            "circles_covered": self.circles_covered,
            "chains": [ch.to_dict() for ch in self.chains],
        }


def common_tangents_bruteforce(C1: Circle, C2: Circle) -> tuple[Circle, ...]:
    """Scan every circle of the plane for tangency to both carriers."""
    if C1 == C2:
        raise IdenticalCircles("carriers must be distinct")
    pos = classify(C1, C2)
    carrier_contact = pos.points[0] if pos.is_tangent else None
    out = []
    for T in all_circles(C1.spec):
        if T == C1 or T == C2:
            continue
        p1 = classify(T, C1)
        if not p1.is_tangent:
            continue
        p2 = classify(T, C2)
        if not p2.is_tangent:
            continue
        if carrier_contact is not None and (p1.points[0] == carrier_contact
                                            or p2.points[0] == carrier_contact):
            continue
        out.append(T)
    return tuple(sorted(out, key=Circle.key))


def _simple_cycles(adj: dict[int, list[int]], n: int) -> list[list[int]]:
    """All simple cycles of length >= 3, one representative per
    rotation/reversal class, ordered by smallest member."""
    cycles: list[list[int]] = []

    def dfs(root: int, path: list[int], on_path: set[int]):
        last = path[-1]
        for nxt in adj[last]:
            if nxt == root:
                if len(path) >= 3 and path[1] < path[-1]:
                    cycles.append(list(path))
            elif nxt > root and nxt not in on_path:
                on_path.add(nxt)
                path.append(nxt)
                dfs(root, path, on_path)
                path.pop()
                on_path.remove(nxt)

    for root in range(n):
        dfs(root, [root], {root})
    return cycles


def chain_census_bruteforce(C1: Circle, C2: Circle) -> ChainCensus:
    """Every proper Steiner chain on the pair, by exhaustive search."""
    pencil = common_tangents_bruteforce(C1, C2)
    n = len(pencil)
    adj: dict[int, list[int]] = {i: [] for i in range(n)}
    for i in range(n):
        for j in range(i + 1, n):
            pos = classify(pencil[i], pencil[j])
            if not pos.is_tangent:
                continue
            contact = pos.points[0]
            # a contact point on a carrier would be shared three ways
            if C1.incident(contact) or C2.incident(contact):
                continue
            adj[i].append(j)
            adj[j].append(i)
    chains = []
    seen: set[frozenset] = set()
    for cyc in _simple_cycles(adj, n):
        circles = tuple(pencil[i] for i in cyc)
        identity = frozenset(circles)
        if identity in seen:
            continue
        if validate_chain(circles, C1, C2).ok:
            seen.add(identity)
            chains.append(SteinerChain.build(circles, C1, C2))
    chains.sort(key=lambda ch: tuple(c.key() for c in ch.circles))
    hist = Counter(ch.length for ch in chains)
    covered = len({c for ch in chains for c in ch.circles})
    return ChainCensus(n, tuple(chains), tuple(sorted(hist.items())), covered)


@dataclass
class ComparisonReport:
    agree: bool
    mismatches: tuple[str, ...]

    def __bool__(self) -> bool:
        return self.agree

    def to_dict(self) -> dict:
        return {"agree": self.agree, "mismatches": list(self.mismatches)}


def compare(prediction: ChainPrediction, census: ChainCensus) -> ComparisonReport:
    """Structural agreement between a prediction and an oracle census:
    (length, count) multisets when the prediction claims exact counts,
    existence plus length sets otherwise."""
    mismatches: list[str] = []
    if prediction.counts_exact:
        want = dict(prediction.histogram)
        got = dict(census.histogram)
        for length in sorted(set(want) | set(got)):
            a, b = want.get(length, 0), got.get(length, 0)
            if a != b:
                mismatches.append(
                    f"length {length}: predicted {a} chain(s), census found {b}")
    else:
        want_l = set(prediction.lengths)
        got_l = set(census.lengths)
        for length in sorted(want_l - got_l):
            mismatches.append(f"length {length} predicted but not found")
        for length in sorted(got_l - want_l):
            mismatches.append(f"length {length} found but not predicted")
    if prediction.exists != bool(census.chains):
        mismatches.append(
            f"existence: predicted {prediction.exists}, "
            f"census found {len(census.chains)} chain(s)")
    return ComparisonReport(not mismatches, tuple(mismatches))
