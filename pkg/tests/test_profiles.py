import random
from fractions import Fraction as F

import pytest

from laakso.core import point
from laakso.profiles import (
    TWO_LEVEL_BRANCHES,
    census_records,
    classify_two_level,
    expected_kinks,
    nondiff_height_census,
    parallel_reduction,
    profile_distance_on_line,
    profile_to_svg,
    vertical_lines,
)


def _profile(p, levels, branch=0):
    line = vertical_lines(p, levels)[branch]
    return line, profile_distance_on_line(p, line)


def test_v0_profile():
    p = point("1/2", "0")
    line, prof = _profile(p, ())
    assert [k.height for k in prof.kinks] == [F(1, 2)]
    assert (prof.kinks[0].left_slope, prof.kinks[0].right_slope) == (-1, 1)
    assert prof.kinks[0].kind == "min"
    assert prof.value_at(F(1, 2)) == 0 and prof.value_at(F(1, 4)) == F(1, 4)


def test_single_jump_profile_frozen():
    p = point("1/2", "0")
    line, prof = _profile(p, (1,))
    assert prof.kink_heights() == [F(1, 3), F(1, 2), F(2, 3)]
    assert [k.kind for k in prof.kinks] == ["min", "max", "min"]
    assert prof.kink_heights() == expected_kinks(p, line)
    # value at the roof kink: both routes cost gap-down + gap-up
    assert prof.value_at(F(1, 2)) == F(1, 3)


def test_two_level_frozen_cases():
    branch, heights = classify_two_level(F(13, 20), 1, 2)
    assert branch == "straddle-up"
    assert heights == [F(1, 3), F(7, 20), F(5, 9), F(13, 20), F(2, 3), F(41, 60), F(7, 9)]
    branch, heights = classify_two_level(F(7, 20), 1, 2)
    assert branch == "straddle-down"
    branch, heights = classify_two_level(F(1, 2), 1, 2)
    assert branch == "nested"
    assert heights == [F(1, 3), F(1, 2), F(2, 3)]
    branch, heights = classify_two_level(F(1, 4), 1, 2)
    assert branch == "deg-low-near"
    assert heights == [F(2, 9), F(1, 4), F(1, 3), F(5, 12), F(4, 9)]
    assert classify_two_level(F(1, 10), 1, 2) == ("deg-low-both", [F(1, 3)])
    assert classify_two_level(F(1, 5), 1, 2) == ("deg-low-far", [F(1, 3)])
    assert classify_two_level(F(35, 36), 1, 2) == ("deg-high-both", [F(2, 3)])
    assert classify_two_level(F(4, 5), 1, 2) == ("deg-high-far", [F(2, 3)])
    branch, heights = classify_two_level(F(3, 4), 1, 2)
    assert branch == "deg-high-near"
    assert heights == [F(5, 9), F(7, 12), F(2, 3), F(3, 4), F(7, 9)]
    assert set(b for b, _ in [classify_two_level(h, 1, 2) for _, h in []]) <= set(TWO_LEVEL_BRANCHES)


def test_single_jump_one_sided_gap():
    # below every order-1 wormhole the profile has a single kink, at the
    # height of the first one above
    p = point("1/10", "0")
    line, prof = _profile(p, (1,))
    assert prof.kink_heights() == expected_kinks(p, line) == [F(1, 3)]
    assert prof.kinks[0].kind == "min"
    # mirrored near the top
    p = point("9/10", "0")
    line, prof = _profile(p, (1,))
    assert prof.kink_heights() == [F(2, 3)]


def test_two_level_profiles_match_each_frozen_case():
    for height in (F(13, 20), F(7, 20), F(1, 2), F(1, 4), F(1, 10), F(3, 4)):
        p = point(height, "00")
        line, prof = _profile(p, (1, 2))
        assert prof.kink_heights() == expected_kinks(p, line), height


def test_profile_slopes_and_tiling():
    p = point("13/20", "0")
    _, prof = _profile(p, (1, 2))
    assert prof.pieces[0].lo == 0 and prof.pieces[-1].hi == 1
    for a, b in zip(prof.pieces, prof.pieces[1:]):
        assert a.hi == b.lo
        assert a.value_at(a.hi) == b.value_at(b.lo)  # continuous at the joint
    assert all(p_.slope in (-1, 1) for p_ in prof.pieces)
    # kink kinds alternate, starting and ending with a minimum
    kinds = [k.kind for k in prof.kinks]
    assert kinds == ["min" if i % 2 == 0 else "max" for i in range(len(kinds))]


def test_wormhole_base_point_two_lines():
    p = point("1/3", "0")
    lines = vertical_lines(p, (2,))
    assert len(lines) == 2 and {l.branch for l in lines} == {0, 1}
    expected = expected_kinks(p, lines[0])
    for line in lines:
        prof = profile_distance_on_line(p, line)
        assert prof.kink_heights() == expected
    with pytest.raises(ValueError):
        vertical_lines(p, (1,))  # the base point's own wormhole order


def test_vertical_lines_validation():
    p = point("1/2", "0")
    assert vertical_lines(p, ())[0].label == "v0"
    assert vertical_lines(p, (3,))[0].label == "v3"
    assert vertical_lines(p, (1, 4))[0].label == "vD:1,4"
    with pytest.raises(ValueError):
        vertical_lines(p, (2, 1))
    with pytest.raises(ValueError):
        vertical_lines(p, (1, 1))


def test_expected_kinks_rejects_deep_lines():
    p = point("1/2", "0")
    line = vertical_lines(p, (1, 2, 3))[0]
    with pytest.raises(ValueError):
        expected_kinks(p, line)


def test_parallel_reduction():
    p = point("2/5", "0")
    full, two = parallel_reduction(p, (1, 2, 3), F(2, 5))
    assert full == two
    rng = random.Random(51)
    for _ in range(50):
        t = F(rng.randint(0, 81), 81)
        full, two = parallel_reduction(p, (1, 2, 3, 4), t)
        assert full == two
    with pytest.raises(ValueError):
        parallel_reduction(p, (1, 2), F(1, 2))


def test_profile_on_three_level_line_matches_two_level():
    # the verification-based profiler handles deep lines even though the
    # closed forms stop at two levels
    p = point("2/5", "0")
    deep = vertical_lines(p, (1, 2, 3))[0]
    shallow = vertical_lines(p, (1, 2))[0]
    prof_deep = profile_distance_on_line(p, deep)
    prof_shallow = profile_distance_on_line(p, shallow)
    assert prof_deep.kink_heights() == prof_shallow.kink_heights()


def test_census_frozen_and_bounds():
    p = point("1/2", "0")
    assert nondiff_height_census(p, 1) == [F(1, 3), F(1, 2), F(2, 3)]
    census = nondiff_height_census(p, 4)
    levels = 4
    pairs = levels * (levels - 1) // 2
    assert len(census) <= 7 * pairs + 3 * levels + 1
    records = census_records(p, 2)
    assert ("v0" in {r[1] for r in records}) and all(r[2] in ("min", "max") for r in records)
    rows = {(r[0], r[1]) for r in records}
    assert (F(1, 2), "v0") in rows
    with pytest.raises(ValueError):
        census_records(p, 0)


def test_census_heights_confirmed_by_profiles():
    p = point("2/5", "01")
    census = set(nondiff_height_census(p, 2))
    confirmed = set()
    for levels in [(), (1,), (2,), (1, 2)]:
        for line in vertical_lines(p, levels):
            prof = profile_distance_on_line(p, line)
            kinks = set(prof.kink_heights())
            assert kinks <= census
            confirmed |= kinks
    assert confirmed == census


def test_linearity_failure_signals_internal_error():
    # a profile evaluator that is not piecewise slope +-1 cannot be
    # certified; the solver reports it instead of emitting a wrong profile
    from laakso.profiles import ProfileLinearityError, _certify

    def v(t):
        return t * t

    with pytest.raises(ProfileLinearityError):
        _certify(v, F(0), v(F(0)), F(1, 2), v(F(1, 2)), 0, [])


def test_svg_output():
    p = point("1/2", "0")
    line, prof = _profile(p, (1,))
    svg = profile_to_svg(prof)
    assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")
    assert svg.count("<circle") == len(prof.kinks)
    assert "polyline" in svg and "1/3" in svg
