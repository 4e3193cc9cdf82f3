"""Ideal triangulations of the closed genus-g surface with two marked points.

Encoding conventions, used everywhere in this package:

* Edges are numbered ``0..E-1``.  The two directed versions of edge ``e``
  are the nonzero integers ``+(e+1)`` and ``-(e+1)`` ("signed labels").
* A triangulation is a list of triangles, each a triple of signed labels
  read counterclockwise.  Every edge appears exactly once with each sign
  over the whole table; this is precisely consistent orientation of the
  glued surface.
* Side ``k`` of a triangle runs from corner ``k`` to corner ``k+1 (mod 3)``,
  so corner ``k`` is the tail of side ``k`` and the head of side ``k-1``.
  The side not touching corner ``k`` is side ``k+1``.
* The two directed copies of an edge are glued head-to-tail (the gluing
  reverses direction), which is what makes all triangles counterclockwise.

The marked points are the two vertex classes obtained by corner tracing.
``P1`` is distinguished by an anchor corner so that serialized data is
unambiguous; arcs in this package always run from P1 to P2.
"""

from __future__ import annotations

import hashlib
import json
from typing import NamedTuple

from .errors import InvalidTriangulation, UnflippableEdge

P1 = 0
P2 = 1


class Corner(NamedTuple):
    """A triangle corner: ``pos`` is the tail position of side ``pos``."""

    tri: int
    pos: int


def edge_of(label: int) -> int:
    """Edge index of a signed label."""
    return abs(label) - 1


class Triangulation:
    """An oriented two-vertex ideal triangulation, immutable after construction.

    The constructor accepts any table of signed triples; structural problems
    are reported by :meth:`validate` rather than raised, so that the
    validator can be pointed at broken data.  Operations that need a valid
    table (``flip``, corner queries, ...) raise ``InvalidTriangulation``.
    """

    __slots__ = (
        "genus",
        "triangles",
        "_p1_anchor",
        "_side_of",
        "_vertex_of_corner",
        "_violations",
        "_hash",
        "_canonical",
    )

    def __init__(self, genus, triangles, p1_corner=None):
        self.genus = int(genus)
        self.triangles = tuple(tuple(int(s) for s in t) for t in triangles)
        self._side_of = None
        self._vertex_of_corner = None
        self._canonical = None
        self._violations = self._analyze(p1_corner)
        self._hash = hash((self.genus, self.triangles, self._p1_anchor))

    # ------------------------------------------------------------------
    # construction-time analysis

    def _analyze(self, p1_corner):
        violations = []
        if self.genus < 1:
            violations.append("genus: must be >= 1")
        labels = [s for t in self.triangles for s in t]
        if any(len(t) != 3 for t in self.triangles) or 0 in labels:
            self._p1_anchor = None
            return violations + ["shape: triangles must be triples of nonzero signed labels"]

        n_edges = max((edge_of(s) for s in labels), default=-1) + 1
        counts = {}
        for s in labels:
            counts[s] = counts.get(s, 0) + 1
        for e in range(n_edges):
            pos, neg = counts.get(e + 1, 0), counts.get(-(e + 1), 0)
            if pos + neg != 2:
                violations.append(f"edge degree: edge {e} has {pos + neg} sides (expected 2)")
            elif pos != 1:
                violations.append(f"orientation: edge {e} appears twice with the same sign")

        if violations:
            self._p1_anchor = None
            return violations

        self._side_of = {}
        for ti, t in enumerate(self.triangles):
            for k, s in enumerate(t):
                self._side_of[s] = Corner(ti, k)

        # Connectivity of the glued surface via triangle adjacency.
        if self.triangles:
            seen = {0}
            stack = [0]
            while stack:
                ti = stack.pop()
                for s in self.triangles[ti]:
                    tj = self._side_of[-s].tri
                    if tj not in seen:
                        seen.add(tj)
                        stack.append(tj)
            if len(seen) != len(self.triangles):
                violations.append("connectivity: surface is disconnected")

        classes = list(self._corner_orbits())
        if len(classes) != 2:
            violations.append(f"vertex count: corner tracing yields {len(classes)} classes (expected 2)")
        f = len(self.triangles)
        e = n_edges
        v = len(classes)
        if v - e + f != 2 - 2 * self.genus:
            violations.append(
                f"euler: V-E+F = {v - e + f} but 2-2g = {2 - 2 * self.genus}"
            )

        if violations:
            self._p1_anchor = None
            return violations

        if p1_corner is None:
            p1_corner = Corner(0, 0)
        else:
            p1_corner = Corner(*p1_corner)
        vmap = {}
        for ci, cls in enumerate(classes):
            for c in cls:
                vmap[c] = ci
        if p1_corner not in vmap:
            self._p1_anchor = None
            return [f"p1 corner: {p1_corner} is not a corner of the table"]
        if vmap[p1_corner] != 0:
            vmap = {c: 1 - x for c, x in vmap.items()}
        self._vertex_of_corner = vmap
        self._p1_anchor = min(c for c, x in vmap.items() if x == P1)
        return []

    def _corner_orbits(self):
        """Partition corners into vertex classes by rotating around vertices.

        From corner (t, k), crossing the outgoing side t[k] lands on the
        corner at the same vertex in the neighbouring triangle: the head of
        the glued side.
        """
        todo = {Corner(t, k) for t in range(len(self.triangles)) for k in range(3)}
        while todo:
            start = min(todo)
            orbit = []
            c = start
            while True:
                orbit.append(c)
                todo.discard(c)
                s = self.triangles[c.tri][c.pos]
                opp = self._side_of[-s]
                c = Corner(opp.tri, (opp.pos + 1) % 3)
                if c == start:
                    break
            yield tuple(orbit)

    # ------------------------------------------------------------------
    # queries

    @property
    def n_edges(self) -> int:
        return 3 * len(self.triangles) // 2

    @property
    def n_triangles(self) -> int:
        return len(self.triangles)

    def validate(self) -> list[str]:
        """Every violated invariant, as data; the table is valid iff empty."""
        return list(self._violations)

    @property
    def is_valid(self) -> bool:
        return not self._violations

    def _require_valid(self):
        if self._violations:
            raise InvalidTriangulation("; ".join(self._violations))

    def side(self, corner: Corner) -> int:
        """Signed label of side ``corner.pos`` of triangle ``corner.tri``."""
        return self.triangles[corner.tri][corner.pos]

    def side_corner(self, label: int) -> Corner:
        """The (triangle, position) holding a signed label."""
        self._require_valid()
        return self._side_of[label]

    def tri_of(self, label: int) -> int:
        return self.side_corner(label).tri

    def vertex_of(self, corner: Corner) -> int:
        """P1 or P2 for a corner."""
        self._require_valid()
        return self._vertex_of_corner[Corner(*corner)]

    def corners_at(self, vertex: int) -> list[Corner]:
        self._require_valid()
        return sorted(c for c, x in self._vertex_of_corner.items() if x == vertex)

    def edge_endpoints(self, e: int) -> tuple[int, int]:
        """(tail vertex, head vertex) of the positive side of edge ``e``."""
        c = self.side_corner(e + 1)
        return self.vertex_of(c), self.vertex_of(Corner(c.tri, (c.pos + 1) % 3))

    def connector_edges(self) -> list[int]:
        """Edges joining P1 to P2, in increasing order."""
        return [e for e in range(self.n_edges) if self.edge_endpoints(e)[0] != self.edge_endpoints(e)[1]]

    def is_flippable(self, e: int) -> bool:
        self._require_valid()
        return self.tri_of(e + 1) != self.tri_of(-(e + 1))

    # ------------------------------------------------------------------
    # the flip
    #
    #          q3                               q3
    #          o                                o
    #         / \           flip e             /|\
    #      C /   \ B       ------->         C / | \ B
    #       /     \                          /  |  \
    #   q0 o---e---o q2                  q0 o   e   o q2
    #       \     /                          \  |  /
    #      D \   / A                        D \ | / A
    #         \ /                              \|/
    #          o                                o
    #          q1                               q1
    #
    # Old +e runs q2->q0 in t1 = (+e, A, B); old -e runs q0->q2 in
    # t2 = (-e, C, D).  New +e runs q3->q1, placed at position 0:
    # t1 := (+e, B, C) and t2 := (-e, D, A).

    def flip(self, e: int) -> "Triangulation":
        """Replace edge ``e`` by the opposite diagonal of its quad.

        The new diagonal keeps the label ``e`` and sits at position 0 of
        both rewritten triangles.  Note the table-level flip has order four
        (two flips reverse the stored direction of ``e``); use
        :meth:`flip_inverse` to undo a flip exactly.
        """
        self._require_valid()
        s = e + 1
        c_pos, c_neg = self.side_corner(s), self.side_corner(-s)
        t1, t2 = c_pos.tri, c_neg.tri
        if t1 == t2:
            raise UnflippableEdge(f"edge {e}: both sides lie in triangle {t1}")
        a1, a2 = c_pos.pos, c_neg.pos
        side_a = self.triangles[t1][(a1 + 1) % 3]
        side_b = self.triangles[t1][(a1 + 2) % 3]
        side_c = self.triangles[t2][(a2 + 1) % 3]
        side_d = self.triangles[t2][(a2 + 2) % 3]

        new_tris = list(self.triangles)
        new_tris[t1] = (s, side_b, side_c)
        new_tris[t2] = (-s, side_d, side_a)

        flipped = Triangulation(self.genus, new_tris, p1_corner=Corner(0, 0))
        if not flipped.is_valid:  # cannot happen on a valid input
            raise InvalidTriangulation("flip produced an invalid table: " + "; ".join(flipped._violations))
        flipped._relabel_vertices_from(self, skip_edge=e)
        return flipped

    def double_flip_side_map(self, e: int):
        """Side correspondence from ``self.flip(e).flip(e)`` back to ``self``.

        Two flips of ``e`` restore the geometric triangulation exactly, but
        the table stores the diagonal with the opposite sign (and the two
        adjacent triangles trade roles).  The induced relabelling on signed
        labels is ``s -> s`` away from ``e`` and ``+-e -> -+e`` on it; this
        returns that map as a callable.
        """
        return lambda s: -s if edge_of(s) == e else s

    def _relabel_vertices_from(self, old: "Triangulation", skip_edge):
        """Transport the P1/P2 labels through a local retriangulation.

        Every edge other than the flipped one is pointwise unchanged, so the
        tail of each of its directed sides stays at the same marked point.
        Each such side casts a vote; the votes must cover both classes and
        agree (guaranteed for a flippable edge).
        """
        votes = {}
        for s, c_old in old._side_of.items():
            if skip_edge is not None and edge_of(s) == skip_edge:
                continue
            c_new = self._side_of[s]
            label = old._vertex_of_corner[c_old]
            cls = self._vertex_of_corner[c_new]
            prev = votes.setdefault(cls, label)
            if prev != label:
                raise InvalidTriangulation("vertex transport: inconsistent votes")
        if sorted(votes.values()) != [0, 1]:
            raise InvalidTriangulation("vertex transport: votes do not cover both marked points")
        if votes[0] != P1:
            self._vertex_of_corner = {c: 1 - x for c, x in self._vertex_of_corner.items()}
        self._p1_anchor = min(c for c, x in self._vertex_of_corner.items() if x == P1)
        self._hash = hash((self.genus, self.triangles, self._p1_anchor))

    # ------------------------------------------------------------------
    # canonical form and isomorphism

    def canonical_form(self) -> tuple:
        """Canonical encoding up to orientation-preserving relabelling fixing P1.

        BFS from every corner at P1; triangles and edges are renumbered in
        discovery order, edge signs normalized to the first traversal
        direction, and the minimum encoding over all starts is returned.
        """
        self._require_valid()
        if self._canonical is not None:
            return self._canonical
        best = None
        for start in self.corners_at(P1):
            enc = self._encode_from(start)
            if best is None or enc < best:
                best = enc
        self._canonical = best
        return best

    def _encode_from(self, start: Corner) -> tuple:
        edge_map = {}  # old signed -> new signed
        tri_order = []
        tri_rot = {}
        queue = [(start.tri, start.pos)]
        seen = {start.tri}
        out = []
        while queue:
            ti, rot = queue.pop(0)
            tri_order.append(ti)
            tri_rot[ti] = rot
            row = []
            for k in range(3):
                s = self.triangles[ti][(rot + k) % 3]
                if s not in edge_map:
                    new = len(edge_map) // 2 + 1
                    edge_map[s] = new
                    edge_map[-s] = -new
                row.append(edge_map[s])
            out.append(tuple(row))
            for k in range(3):
                s = self.triangles[ti][(rot + k) % 3]
                opp = self._side_of[-s]
                if opp.tri not in seen:
                    seen.add(opp.tri)
                    queue.append((opp.tri, opp.pos))
        return tuple(out)

    def is_isomorphic_to(self, other: "Triangulation") -> bool:
        return self.genus == other.genus and self.canonical_form() == other.canonical_form()

    # ------------------------------------------------------------------
    # serialization

    def to_json_dict(self) -> dict:
        self._require_valid()
        return {
            "format": "arcdist.triangulation/1",
            "genus": self.genus,
            "triangles": [list(t) for t in self.triangles],
            "p1_corner": list(self._p1_anchor),
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "Triangulation":
        t = cls(d["genus"], d["triangles"], p1_corner=tuple(d["p1_corner"]))
        if not t.is_valid:
            raise InvalidTriangulation("; ".join(t._violations))
        return t

    def triangulation_id(self) -> str:
        """Content hash used to tie arcs and certificates to their base."""
        blob = json.dumps(self.to_json_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]

    # ------------------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Triangulation)
            and self.genus == other.genus
            and self.triangles == other.triangles
            and self._p1_anchor == other._p1_anchor
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Triangulation(genus={self.genus}, triangles={self.n_triangles})"


def build_standard_triangulation(g: int) -> Triangulation:
    """The fixed coned-polygon triangulation of the genus-g surface.

    Take the 4g-gon with boundary word ``A1 B1 A1^-1 B1^-1 ... Ag Bg Ag^-1
    Bg^-1`` (all polygon corners identify to the rim point P1) and cone it
    from a center point P2.  Edges: rim edges ``0..2g-1`` (edge ``2i`` is
    ``Ai``, edge ``2i+1`` is ``Bi``), spokes ``2g..6g-1`` (spoke ``2g+k``
    joins P2 to polygon corner ``k``).  Triangle ``k`` is::

        ( +(spoke k),  w_k,  -(spoke k+1 mod 4g) )

    where ``w_k`` is the k-th letter of the boundary word.  This table is
    stable across releases; certificates reference it by content hash.
    """
    if g < 1:
        raise ValueError(f"genus must be >= 1, got {g}")
    word = []
    for i in range(g):
        a, b = 2 * i + 1, 2 * i + 2  # 1-based signed labels of rim edges
        word += [a, b, -a, -b]
    tris = []
    for k in range(4 * g):
        spoke = 2 * g + k + 1
        spoke_next = 2 * g + (k + 1) % (4 * g) + 1
        tris.append((spoke, word[k], -spoke_next))
    t = Triangulation(g, tris, p1_corner=Corner(0, 1))
    if not t.is_valid:
        raise InvalidTriangulation("; ".join(t.validate()))
    return t


def validate(t: Triangulation) -> list[str]:
    """Module-level alias for :meth:`Triangulation.validate`."""
    return t.validate()


def flip(t: Triangulation, e: int) -> Triangulation:
    """Module-level alias for :meth:`Triangulation.flip`."""
    return t.flip(e)


def random_flip_walk(t: Triangulation, seed: int, steps: int) -> tuple[Triangulation, list[int]]:
    """Apply ``steps`` seeded random flips; returns (result, flip sequence)."""
    import random as _random

    rng = _random.Random(seed)
    cur = t
    seq = []
    for _ in range(steps):
        choices = [e for e in range(cur.n_edges) if cur.is_flippable(e)]
        e = rng.choice(choices)
        cur = cur.flip(e)
        seq.append(e)
    return cur, seq
