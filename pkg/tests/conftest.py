import random

import pytest

from arcdist import build_standard_triangulation
from arcdist.arc import random_arc
from arcdist.overlay import intersection


@pytest.fixture(scope="session")
def g1():
    return build_standard_triangulation(1)


@pytest.fixture(scope="session")
def g2():
    return build_standard_triangulation(2)


def seeded_pairs(base, tag, count, max_steps=18, require_crossing=False):
    """Deterministic arc pairs; seeds derive from the tag so suites don't collide."""
    rng = random.Random(tag)
    out = []
    attempt = 0
    while len(out) < count:
        seed = rng.randrange(1 << 30)
        steps = 4 + (attempt % 5) * (max_steps - 4) // 4
        v = random_arc(base, seed, steps)
        w = random_arc(base, seed + 1, steps)
        attempt += 1
        if require_crossing and intersection(v, w) == 0:
            continue
        out.append((v, w))
    return out


def seeded_arcs(base, tag, count, max_steps=14):
    rng = random.Random(tag)
    return [
        random_arc(base, rng.randrange(1 << 30), 3 + i % max_steps)
        for i in range(count)
    ]
