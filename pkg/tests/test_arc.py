import random

import pytest

from arcdist import Corner, InconsistentWord, P1, P2
from arcdist.arc import (
    ArcWord,
    edge_word,
    enumerate_arcs,
    random_arc,
    straighten_to_edge,
    tighten,
    transport,
    transport_inverse,
)
from arcdist.overlay import self_intersection
from arcdist.surface import edge_of

from conftest import seeded_arcs


def test_edge_words_are_canonical(g1):
    for e in g1.connector_edges():
        a = edge_word(g1, e)
        assert len(a) == 0
        assert g1.vertex_of(a.start) == P1
        assert g1.vertex_of(a.end) == P2
        assert a.end.pos == (a.start.pos + 1) % 3


def test_tighten_idempotent_on_reduced(g1, g2):
    for base in (g1, g2):
        for a in seeded_arcs(base, f"tighten-{base.genus}", 40):
            assert tighten(base, a.start, a.crossings, a.end) == a


def test_tighten_removes_inserted_spurs(g1, g2):
    rng = random.Random(20240)
    rounds = 0
    for base in (g1, g2):
        arcs = seeded_arcs(base, f"spurs-{base.genus}", 50)
        for a in arcs:
            for _ in range(5):
                word = list(a.crossings)
                # insert a spur: cross a side of the current triangle and come back
                pos = rng.randrange(len(word) + 1)
                tri = a.start.tri if pos == 0 else base.side_corner(-word[pos - 1]).tri
                side = base.side(Corner(tri, rng.randrange(3)))
                word[pos:pos] = [side, -side]
                assert tighten(base, a.start, word, a.end) == a
                rounds += 1
    assert rounds == 500


def test_tighten_unwinds_endpoint_spin(g1):
    # rotating the start germ around P1 inserts a corner bigon; tightening
    # must return the original word
    for a in seeded_arcs(g1, "spin", 25):
        t, p = a.start
        base_side = g1.side(Corner(t, p))
        opp = g1.side_corner(-base_side)
        spun_start = Corner(opp.tri, (opp.pos + 1) % 3)
        word = (-base_side,) + a.crossings
        assert tighten(g1, spun_start, word, a.end) == a


def test_tighten_rejects_inconsistent_words(g1):
    with pytest.raises(InconsistentWord):
        tighten(g1, Corner(0, 1), (99,), Corner(0, 0))
    with pytest.raises(InconsistentWord):
        tighten(g1, Corner(0, 1), (-4, -4), Corner(0, 0))  # second crossing not in reached triangle


def test_arcword_constructor_enforces_reduction(g1):
    with pytest.raises(InconsistentWord):
        ArcWord(g1, Corner(0, 1), (-4, 4), Corner(0, 0))


def test_tighten_confluence_random_orders(g1):
    # insert several spurs at random places; reduction must converge to the
    # same canonical word no matter where the garbage sits
    rng = random.Random(7)
    for a in seeded_arcs(g1, "confluence", 20):
        for _ in range(10):
            word = list(a.crossings)
            for _ in range(4):
                pos = rng.randrange(len(word) + 1)
                tri = a.start.tri if pos == 0 else g1.side_corner(-word[pos - 1]).tri
                side = g1.side(Corner(tri, rng.randrange(3)))
                word[pos:pos] = [side, -side]
            assert tighten(g1, a.start, word, a.end) == a


def _reduce_in_random_order(base, start, word, end, rng):
    """Independent reducer: apply one applicable move at a time, chosen at
    random, until none remains; checks confluence against tighten's fixed
    strategy."""
    word = list(word)
    while True:
        moves = []
        for i in range(len(word) - 1):
            if word[i + 1] == -word[i]:
                moves.append(("backtrack", i))
        if word:
            t, p = start
            if word[0] in (base.side(Corner(t, p)), base.side(Corner(t, (p + 2) % 3))):
                moves.append(("start", None))
            entered = base.side_corner(-word[-1])
            t, p = end
            if entered in (Corner(t, p), Corner(t, (p + 2) % 3)):
                moves.append(("end", None))
        if not moves:
            return start, tuple(word), end
        kind, i = moves[rng.randrange(len(moves))]
        if kind == "backtrack":
            del word[i : i + 2]
        elif kind == "start":
            first = word.pop(0)
            t, p = start
            opp = base.side_corner(-first)
            start = Corner(opp.tri, (opp.pos + 1) % 3) if first == base.side(Corner(t, p)) else Corner(opp.tri, opp.pos)
        else:
            last = word.pop()
            entered = base.side_corner(-last)
            t, p = end
            back = base.side_corner(last)
            end = Corner(back.tri, (back.pos + 1) % 3) if entered == Corner(t, p) else Corner(back.tri, back.pos)


def test_confluence_against_independent_reducer(g1, g2):
    rng = random.Random(4242)
    trials = 0
    for base in (g1, g2):
        for a in seeded_arcs(base, f"confl2-{base.genus}", 25):
            # bury the word under spurs and an endpoint spin, then reduce in
            # random move order and by tighten; both must land on a
            for _ in range(6):
                word = list(a.crossings)
                start = a.start
                for _ in range(3):
                    pos = rng.randrange(len(word) + 1)
                    tri = start.tri if pos == 0 else base.side_corner(-word[pos - 1]).tri
                    side = base.side(Corner(tri, rng.randrange(3)))
                    word[pos:pos] = [side, -side]
                s0, w0, e0 = _reduce_in_random_order(base, start, word, a.end, rng)
                reduced = tighten(base, s0, w0, e0)  # only zero-length canonicalization left
                assert (s0, w0, e0) == (reduced.start, reduced.crossings, reduced.end) or len(w0) == 0
                assert tighten(base, start, word, a.end) == a
                assert reduced == a
                trials += 1
    assert trials == 300


def test_transport_unmoved_arc(g1):
    # an arc not crossing the flipped edge and not ending in the quad keeps
    # its crossing list
    a = edge_word(g1, 2)  # lives in triangles 0 and 3
    moved = transport(a, 4)  # flip a spoke away from it, quad = triangles 1, 2
    assert moved.crossings == ()


def test_transport_round_trip_single_flips(g1, g2):
    for base in (g1, g2):
        for a in seeded_arcs(base, f"roundtrip-{base.genus}", 25):
            for e in range(base.n_edges):
                if not base.is_flippable(e):
                    continue
                back = transport_inverse(transport(a, e), base, e)
                assert back == a


def test_transport_round_trip_walks(g1, g2):
    rng = random.Random(99)
    done = 0
    for base in (g1, g2):
        for a in seeded_arcs(base, f"walks-{base.genus}", 100):
            chain = [base]
            word = a
            flips = []
            for _ in range(rng.randrange(5, 21)):
                choices = [e for e in range(word.base.n_edges) if word.base.is_flippable(e)]
                e = rng.choice(choices)
                flips.append(e)
                word = transport(word, e)
                chain.append(word.base)
            for i in range(len(flips) - 1, -1, -1):
                word = transport_inverse(word, chain[i], flips[i])
            assert word == a
            done += 1
    assert done == 200


def test_random_arc_deterministic_and_embedded(g1, g2):
    for base in (g1, g2):
        assert random_arc(base, 42, 9) == random_arc(base, 42, 9)
        for seed in range(500):
            a = random_arc(base, seed, 2 + seed % 11)
            assert self_intersection(a) == 0
            assert tighten(base, a.start, a.crossings, a.end) == a


def test_random_arc_zero_steps_is_an_edge(g1):
    a = random_arc(g1, 5, 0)
    assert len(a) == 0


def test_enumerate_arcs_small(g1):
    zero = enumerate_arcs(g1, 0)
    assert len(zero) == len(g1.connector_edges())
    out = enumerate_arcs(g1, 4)
    assert len(out) == len(set(out))
    assert all(tighten(g1, a.start, a.crossings, a.end) == a for a in out)
    assert out == sorted(out, key=ArcWord.sort_key)


def test_enumerate_matches_brute_force(g1):
    """Independent oracle: tighten every locally consistent word and filter."""
    brute = set()
    max_len = 4
    for start in g1.corners_at(P1):
        stack = [()]
        while stack:
            word = stack.pop()
            tri = g1.side_corner(-word[-1]).tri if word else start.tri
            for pos in range(3):
                end = Corner(tri, pos)
                if g1.vertex_of(end) != P2:
                    continue
                try:
                    a = tighten(g1, start, word, end)
                except InconsistentWord:
                    continue
                if len(a) <= max_len and self_intersection(a) == 0:
                    brute.add(a)
            if len(word) < max_len:
                for k in range(3):
                    stack.append(word + (g1.side(Corner(tri, k)),))
    assert brute == set(enumerate_arcs(g1, max_len))


def test_straighten_to_edge(g1, g2):
    for base in (g1, g2):
        for a in seeded_arcs(base, f"straighten-{base.genus}", 30):
            flips, e = straighten_to_edge(a)
            moved = a
            for f in flips:
                moved = transport(moved, f)
            assert len(moved) == 0
            assert edge_of(moved.base.side(moved.start)) == e


def test_straighten_one_crossing_arcs_exhaustively(g1):
    for a in enumerate_arcs(g1, 1):
        if len(a) != 1:
            continue
        flips, e = straighten_to_edge(a)
        assert len(flips) >= 1
