"""Surgery on a crossing arc pair and the resulting arc-complex paths.

Given arcs v and w crossing k > 0 times, pick the crossing p on v whose
remaining stretch to P2 misses w, and splice: the new arc follows w from P1
up to p, then v from p to P2.  The result w' is disjoint from w and crosses
v strictly fewer times, so iterating walks w to an arc disjoint from v and
yields a path of at most k + 1 edges in the arc complex.  Both
postconditions are re-verified on every step; a failure aborts with a
diagnostic rather than returning an unproven trace.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arc import ArcWord, tighten
from .errors import BaseMismatch, PreconditionError, VerificationError
from .leveling import ArcSequence, validate_sequence
from .overlay import Realization, intersection, self_intersection


@dataclass(frozen=True)
class SurgeryTrace:
    """One verified surgery step."""

    v: ArcWord
    w: ArcWord
    crossing: tuple  # (v segment, w segment, triangle) of the chosen point
    resolution: str
    w_prime: ArcWord
    intersections_before: int
    intersections_after: int

    def to_json_dict(self) -> dict:
        return {
            "format": "arcdist.surgery_trace/1",
            "triangulation": self.v.base.to_json_dict(),
            "v": self.v.to_json_dict(),
            "w": self.w.to_json_dict(),
            "crossing": list(self.crossing),
            "resolution": self.resolution,
            "w_prime": self.w_prime.to_json_dict(),
            "intersections_before": self.intersections_before,
            "intersections_after": self.intersections_after,
        }


def _spliced_word(v: ArcWord, w: ArcWord, v_seg: int, w_seg: int) -> ArcWord:
    """w up to the chosen crossing, then v onward; tightened to canonical."""
    raw = w.crossings[:w_seg] + v.crossings[v_seg:]
    return tighten(v.base, w.start, raw, v.end)


def surgery_step(v: ArcWord, w: ArcWord) -> SurgeryTrace:
    """The descent step: returns w' with w.w' = 0 and w'.v < w.v.

    The splice point is the last crossing along v; its stretch from there
    to P2 is disjoint from w by construction.  At the level of reduced
    words the two smoothings of the corner at p give the same arc, so there
    is a single resolution; the postconditions are checked mechanically and
    a failure raises (it would indicate an engine defect, not a valid
    outcome).
    """
    if v.base != w.base:
        raise BaseMismatch("arcs live over different triangulations")
    real = Realization(v, w)
    k = real.count()
    if k == 0:
        raise PreconditionError("surgery needs crossing arcs; these are disjoint")
    p = max(real.crossings, key=lambda x: (x.v_seg, x.v_rank))
    w_prime = _spliced_word(v, w, p.v_seg, p.w_seg)

    k_ww = intersection(w, w_prime)
    k_vw = intersection(v, w_prime)
    if k_ww != 0 or k_vw >= k or self_intersection(w_prime) != 0:
        raise VerificationError(
            f"surgery postcondition failed: w.w'={k_ww}, v.w'={k_vw} (was {k})"
        )
    return SurgeryTrace(
        v=v,
        w=w,
        crossing=(p.v_seg, p.w_seg, p.tri),
        resolution="splice-at-last-crossing",
        w_prime=w_prime,
        intersections_before=k,
        intersections_after=k_vw,
    )


def path_between(v: ArcWord, w: ArcWord) -> ArcSequence:
    """A verified path w = u_0, ..., u_m = v with m <= v.w + 1.

    Consecutive arcs are disjoint and the crossing number with v strictly
    descends along the surgery, mirroring the connectivity argument; the
    whole sequence is re-validated before returning.
    """
    if v.base != w.base:
        raise BaseMismatch("arcs live over different triangulations")
    k0 = intersection(v, w)
    hops = [w]
    current = w
    last = intersection(v, current)
    while last > 0:
        trace = surgery_step(v, current)
        current = trace.w_prime
        if trace.intersections_after >= last:
            raise VerificationError("surgery descent stalled")
        last = trace.intersections_after
        hops.append(current)
    if current != v:
        hops.append(v)
    seq = ArcSequence(v.base, tuple(hops))
    if seq.edge_count > k0 + 1:
        raise VerificationError(
            f"path length {seq.edge_count} exceeds the {k0 + 1} bound"
        )
    problems = validate_sequence(seq)
    if problems:
        raise VerificationError("; ".join(problems))
    return seq
