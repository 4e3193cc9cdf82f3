"""Arc distance: exact classification for 0, 1, 2 and certified bounds beyond.

Distances 0 and 1 are immediate from equality and disjointness.  Distance 2
holds exactly when, with the pair realized in minimal position, some
complement component touches both marked points: a common disjoint arc can
then be drawn inside that component, and conversely any arc disjoint from
both can be isotoped into a component of the complement.  The witness is
constructed by routing through the component and re-verified, so the
criterion is never trusted without a checkable artifact.  For distance at
least 3 the certificate carries bounds: the lower bound 3 from the failed
0/1/2 checks, the upper bound from the surgery path (optionally improved by
a bounded search through the low-complexity part of the arc complex).
"""

from __future__ import annotations

from dataclasses import dataclass

from .arc import ArcWord, enumerate_arcs, tighten
from .errors import BaseMismatch, PreconditionError, VerificationError
from .leveling import ArcSequence
from .overlay import intersection, overlay_builder, self_intersection
from .surface import Triangulation
from .surgery import path_between


@dataclass(frozen=True)
class Verdict:
    kind: str  # "exact" | "bounds"
    value: int | None = None
    lower: int | None = None
    upper: int | None = None

    def as_tuple(self):
        if self.kind == "exact":
            return (self.value, self.value)
        return (self.lower, self.upper)

    def to_json_dict(self) -> dict:
        if self.kind == "exact":
            return {"kind": "exact", "value": self.value}
        return {"kind": "bounds", "lower": self.lower, "upper": self.upper}


@dataclass(frozen=True)
class DistanceCertificate:
    """Verdict plus evidence re-checkable from the arc operations alone."""

    v: ArcWord
    w: ArcWord
    verdict: Verdict
    witness: ArcWord | None = None
    path: ArcSequence | None = None
    intersection_vw: int = 0
    checked_distance_two: bool = False
    search_note: str | None = None

    def witness_path(self) -> list[ArcWord]:
        """Arcs from v to w certifying the upper bound."""
        d = self.verdict.as_tuple()[1]
        if d == 0:
            return [self.v]
        if d == 1:
            return [self.v, self.w]
        if self.verdict.kind == "exact" and d == 2:
            return [self.v, self.witness, self.w]
        return list(reversed(self.path.arcs))  # stored from w to v

    def to_json_dict(self) -> dict:
        out = {
            "format": "arcdist.distance_certificate/1",
            "triangulation": self.v.base.to_json_dict(),
            "pair": {"v": self.v.to_json_dict(), "w": self.w.to_json_dict()},
            "verdict": self.verdict.to_json_dict(),
            "evidence": {
                "intersection_vw": self.intersection_vw,
                "checked_distance_two": self.checked_distance_two,
            },
        }
        if self.witness is not None:
            out["evidence"]["witness"] = self.witness.to_json_dict()
        if self.path is not None:
            out["evidence"]["path"] = [a.to_json_dict() for a in self.path.arcs]
        if self.search_note:
            out["evidence"]["search"] = self.search_note
        return out


@dataclass(frozen=True)
class ShadowPairInput:
    """Finite shadow lists for the two sides of a one-bridge position."""

    base: Triangulation
    v_side: tuple[ArcWord, ...]
    w_side: tuple[ArcWord, ...]

    def __post_init__(self):
        if not self.v_side or not self.w_side:
            raise PreconditionError("shadow lists must be non-empty")
        for a in (*self.v_side, *self.w_side):
            if a.base != self.base:
                raise BaseMismatch("shadow over a different triangulation")

    def to_json_dict(self) -> dict:
        return {
            "format": "arcdist.shadow_pair/1",
            "triangulation": self.base.to_json_dict(),
            "v_side": [a.to_json_dict() for a in self.v_side],
            "w_side": [a.to_json_dict() for a in self.w_side],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "ShadowPairInput":
        base = Triangulation.from_json_dict(d["triangulation"])
        return cls(
            base,
            tuple(ArcWord.from_json_dict(a, base) for a in d["v_side"]),
            tuple(ArcWord.from_json_dict(a, base) for a in d["w_side"]),
        )


def _distance_two_witness(v: ArcWord, w: ArcWord) -> ArcWord | None:
    """An arc disjoint from both, or None when no complement component
    touches both marked points."""
    builder = overlay_builder(v, w)
    builder.summarize()  # runs the minimality self-checks
    routed = builder.route_between_marked()
    if routed is None:
        return None
    start, word, end = routed
    u = tighten(v.base, start, word, end)
    if self_intersection(u) != 0 or intersection(u, v) != 0 or intersection(u, w) != 0:
        raise VerificationError("distance-2 witness failed to verify")
    return u


def classify(v: ArcWord, w: ArcWord, max_len: int | None = None, max_depth: int | None = None) -> DistanceCertificate:
    """Exact distance for 0, 1, 2; verified bounds otherwise.

    When search bounds are supplied, a breadth-first search through the
    arcs of length <= max_len may shorten the upper bound coming from the
    surgery path.
    """
    if v.base != w.base:
        raise BaseMismatch("arcs live over different triangulations")
    if v == w:
        return DistanceCertificate(v, w, Verdict("exact", value=0))
    k = intersection(v, w)
    if k == 0:
        return DistanceCertificate(v, w, Verdict("exact", value=1))
    u = _distance_two_witness(v, w)
    if u is not None:
        return DistanceCertificate(
            v, w, Verdict("exact", value=2), witness=u, intersection_vw=k, checked_distance_two=True
        )
    path = path_between(v, w)
    note = None
    if max_len is not None and max_depth is not None:
        found = bounded_search(v, w, max_len, max_depth)
        if found is not None and found.edge_count < path.edge_count:
            path = found
            note = f"search improved the bound within max_len={max_len}, max_depth={max_depth}"
        else:
            note = f"search within max_len={max_len}, max_depth={max_depth} did not improve the bound"
    return DistanceCertificate(
        v,
        w,
        Verdict("bounds", lower=3, upper=path.edge_count),
        path=path,
        intersection_vw=k,
        checked_distance_two=True,
        search_note=note,
    )


def bounded_search(v: ArcWord, w: ArcWord, max_len: int, max_depth: int) -> ArcSequence | None:
    """Breadth-first search from w to v through arcs of bounded length.

    Sound but complete only relative to the bounds: None means no path was
    found inside them, never that no path exists.  Exploration order is
    canonical, so the result is deterministic.
    """
    if max_len <= 0 or max_depth <= 0:
        raise PreconditionError("search bounds must be positive")
    if v.base != w.base:
        raise BaseMismatch("arcs live over different triangulations")
    if v == w:
        return ArcSequence(v.base, (v,))
    universe = enumerate_arcs(v.base, max_len)
    if v not in universe:
        universe.append(v)
    if w not in universe:
        universe.append(w)
    universe.sort(key=ArcWord.sort_key)

    cache: dict[tuple, int] = {}

    def disjoint(a, b):
        key = (a.sort_key(), b.sort_key())
        if key not in cache:
            cache[key] = intersection(a, b)
        return cache[key] == 0

    prev = {w: None}
    frontier = [w]
    for _ in range(max_depth):
        nxt = []
        for cur in frontier:
            for cand in universe:
                if cand in prev or cand == cur:
                    continue
                if disjoint(cur, cand):
                    prev[cand] = cur
                    nxt.append(cand)
            if v in prev:
                break
        if v in prev:
            break
        frontier = nxt
        if not frontier:
            break
    if v not in prev:
        return None
    hops = [v]
    while prev[hops[-1]] is not None:
        hops.append(prev[hops[-1]])
    hops.reverse()  # now w ... v
    return ArcSequence(v.base, tuple(hops))


def common_neighbor_scan(v: ArcWord, w: ArcWord, max_len: int) -> ArcWord | None:
    """First enumerated arc disjoint from both, if any (distance-2 probe)."""
    for cand in enumerate_arcs(v.base, max_len):
        if cand != v and cand != w and intersection(cand, v) == 0 and intersection(cand, w) == 0:
            return cand
    return None


def pair_set_distance(shadow_input: ShadowPairInput, max_len: int | None = None, max_depth: int | None = None) -> DistanceCertificate:
    """Minimum verdict over all shadow pairs from the two finite lists.

    The knot invariant minimizes over every shadow of each side, an
    infinite collection; over user-supplied finite lists the result is an
    upper bound for the knot unless the caller asserts the lists are
    exhaustive.
    """
    best = None
    for v in shadow_input.v_side:
        for w in shadow_input.w_side:
            cert = classify(v, w, max_len=max_len, max_depth=max_depth)
            t = cert.verdict.as_tuple()
            if best is None or (t[1], t[0]) < (best.verdict.as_tuple()[1], best.verdict.as_tuple()[0]):
                best = cert
            if t == (0, 0):
                return best
    return best


def verify_certificate(cert: DistanceCertificate) -> list[str]:
    """Re-check a certificate using only the arc operations; failures as data."""
    problems = []
    v, w = cert.v, cert.w
    if v.base != w.base:
        return ["pair: base mismatch"]
    t = cert.verdict.as_tuple()
    if t[0] > t[1]:
        problems.append("verdict: lower exceeds upper")
    k = intersection(v, w)
    if cert.verdict.kind == "exact":
        d = cert.verdict.value
        if d == 0:
            if v != w:
                problems.append("exact(0): arcs differ")
        elif d == 1:
            if v == w:
                problems.append("exact(1): arcs are equal")
            if k != 0:
                problems.append(f"exact(1): arcs intersect in {k} points")
        elif d == 2:
            if k <= 0:
                problems.append("exact(2): arcs are disjoint, distance would be <= 1")
            u = cert.witness
            if u is None:
                problems.append("exact(2): witness missing")
            else:
                if intersection(u, v) != 0 or intersection(u, w) != 0:
                    problems.append("exact(2): witness is not disjoint from both arcs")
                if u == v or u == w:
                    problems.append("exact(2): witness coincides with an endpoint")
        else:
            problems.append(f"exact({d}): no exact criterion beyond 2")
    else:
        if cert.verdict.lower != 3:
            problems.append("bounds: lower bound must be 3 (the 0/1/2 checks)")
        if k <= 0:
            problems.append("bounds: arcs are disjoint, distance would be <= 1")
        if _distance_two_witness(v, w) is not None:
            problems.append("bounds: a distance-2 witness exists")
        if cert.path is None:
            problems.append("bounds: path evidence missing")
        else:
            seq = cert.path
            if seq.arcs[0] != w or seq.arcs[-1] != v:
                problems.append("bounds: path does not join the pair")
            if seq.edge_count != cert.verdict.upper:
                problems.append("bounds: path length disagrees with the upper bound")
            from .leveling import validate_sequence

            problems += validate_sequence(seq)
    return problems
