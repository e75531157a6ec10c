import math
import random
from fractions import Fraction as F
from itertools import combinations

import pytest

from laakso.core import CantorAddress, Direction, HeightInterval, LaaksoPoint, point, same_point
from laakso.metric import (
    distance,
    geodesic_endings,
    minimal_height_intervals,
    required_levels,
    synthesize_geodesic,
)


def _pool(n, seed, max_depth=4):
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        den = rng.randint(2, 81)
        h = F(rng.randint(0, den), den)
        bits = "".join(rng.choice("01") for _ in range(rng.randint(0, max_depth)))
        out.append(LaaksoPoint(min(h, F(1)), CantorAddress(bits)))
    return out


def test_required_levels_examples():
    assert required_levels(point("1/2", "0"), point("1/2", "1")) == {1}
    assert required_levels(point("1/4", "00"), point("1/4", "11")) == {1, 2}
    assert required_levels(point("1/2", "10"), point("1/2", "1")) == frozenset()
    # canonicalization at a wormhole height removes the glued bit
    assert required_levels(point("1/3", "1"), point("1/2", "0")) == frozenset()


def test_minimal_intervals_examples():
    ivs = minimal_height_intervals(point("1/2", "0"), point("1/2", "1"))
    assert ivs == [HeightInterval(F(1, 3), F(1, 2)), HeightInterval(F(1, 2), F(2, 3))]
    ivs = minimal_height_intervals(point("1/2", "0"), point("2/3", "1"))
    assert ivs == [HeightInterval(F(1, 2), F(2, 3))]
    p = point("2/5", "01")
    assert minimal_height_intervals(p, p) == [HeightInterval(F(2, 5), F(2, 5))]


def test_distance_examples():
    assert distance(point("1/2", "0"), point("1/2", "1")) == F(1, 3)
    assert distance(point("1/2", "0"), point("2/3", "1")) == F(1, 6)
    p = point("4/9", "01")
    assert distance(p, p) == 0
    assert distance(point("4/9", "00"), point("4/9", "11")) == F(2, 9)


def test_distance_symmetry_zero_and_height_bound():
    pool = _pool(80, 21)
    for x, y in combinations(pool, 2):
        d = distance(x, y)
        assert d == distance(y, x)
        assert (d == 0) == same_point(x, y)
        assert d >= abs(x.height - y.height)
        # equality iff every required order is met inside the height span
        lo, hi = min(x.height, y.height), max(x.height, y.height)
        iv = minimal_height_intervals(x, y)[0]
        assert (d == abs(x.height - y.height)) == (iv == HeightInterval(lo, hi))


def test_triangle_inequality_pool_200():
    pool = _pool(200, 22)
    n = len(pool)
    mat = [[F(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            mat[i][j] = mat[j][i] = distance(pool[i], pool[j])
    # integer-scaled exact comparison keeps the all-triples loop fast
    scale = math.lcm(*{mat[i][j].denominator for i in range(n) for j in range(i + 1, n)})
    im = [[int(mat[i][j] * scale) for j in range(n)] for i in range(n)]
    for i, j, k in combinations(range(n), 3):
        dij, djk, dik = im[i][j], im[j][k], im[i][k]
        assert dik <= dij + djk
        assert dij <= dik + djk
        assert djk <= dij + dik


def test_interval_lengths_all_equal():
    pool = _pool(120, 23)
    rng = random.Random(24)
    for _ in range(300):
        x, y = rng.choice(pool), rng.choice(pool)
        ivs = minimal_height_intervals(x, y)
        assert len({iv.length for iv in ivs}) == 1
        for iv in ivs:
            assert iv.contains(x.height) and iv.contains(y.height)


def test_synthesize_geodesic_examples():
    x, y = point("1/2", "0"), point("1/2", "1")
    up = synthesize_geodesic(x, y, HeightInterval(F(1, 2), F(2, 3)))
    assert up.length == F(1, 3)
    assert [j.order for j in up.jumps] == [1]
    assert up.jumps[0].height == F(2, 3)
    assert up.ending_direction == Direction.DOWN
    down = synthesize_geodesic(x, y, HeightInterval(F(1, 3), F(1, 2)))
    assert down.length == F(1, 3)
    assert down.jumps[0].height == F(1, 3)
    assert down.ending_direction == Direction.UP
    assert synthesize_geodesic(x, x, HeightInterval(F(1, 2), F(1, 2))).events == ()
    with pytest.raises(ValueError):
        synthesize_geodesic(x, y, HeightInterval(F(0), F(1)))


def test_geodesic_structure_random():
    rng = random.Random(25)
    pool = _pool(60, 26)
    for _ in range(200):
        x, y = rng.choice(pool), rng.choice(pool)
        d = distance(x, y)
        for iv in minimal_height_intervals(x, y):
            path = synthesize_geodesic(x, y, iv)
            assert path.length == d
            # segments chain continuously and jumps sit on their grids
            pos = None
            for e in path.events:
                if hasattr(e, "start"):
                    if pos is not None:
                        assert e.start == pos
                    assert (e.direction is Direction.UP) == (e.end > e.start)
                    pos = e.end
                else:
                    assert e.height * 3**e.order % 1 == 0
            # at most two direction changes (down, up, down shape)
            dirs = [s.direction for s in path.segments]
            changes = sum(1 for a, b in zip(dirs, dirs[1:]) if a != b)
            assert changes <= 2
            # each required order jumped exactly once
            orders = sorted(j.order for j in path.jumps)
            assert orders == sorted(required_levels(x, y))


def test_geodesic_endings_examples():
    both = geodesic_endings(point("1/2", "0"), point("1/2", "1"))
    assert both == frozenset({Direction.UP, Direction.DOWN})
    assert geodesic_endings(point("1/2", "0"), point("2/3", "1")) == frozenset({Direction.UP})
    assert geodesic_endings(point("1/2", "0"), point("1/3", "1")) == frozenset({Direction.DOWN})
    with pytest.raises(ValueError):
        geodesic_endings(point("1/2", "0"), point("1/2", "00"))


def test_noncanonical_inputs_are_tolerated():
    # ops canonicalize internally, so glued representatives agree
    a = point("1/3", "1")
    b = point("1/3", "0")
    c = point("2/3", "11")
    assert distance(a, c) == distance(b, c)
    assert minimal_height_intervals(a, c) == minimal_height_intervals(b, c)
