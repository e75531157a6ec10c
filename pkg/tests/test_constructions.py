import random
from fractions import Fraction as F

import pytest

from laakso.calculus import difference_quotient, directional_derivative, triadic_schedule
from laakso.constructions import (
    BandSchedule,
    SampledFunction,
    as_point_function,
    build_flat_nondifferentiable,
    build_one_sided_steep,
    build_steep_nondifferentiable,
    find_band_schedule,
    maximality_verdict,
    mcshane_extend,
    porosity_witness,
    sparse_ternary_height,
)
from laakso.core import Direction, nearest_wormhole_gap, point, wormhole_order
from laakso.metric import distance

UNBALANCED = sparse_ternary_height((2, 4, 8, 16, 32), tail=F(1, 2 * 3**34))
MIRROR = 1 - UNBALANCED


def test_sparse_ternary_height():
    t = sparse_ternary_height((2, 4, 8, 16, 32))
    assert t == sum(F(2, 3**a) for a in (2, 4, 8, 16, 32))
    assert wormhole_order(t) == 32  # purely triadic, lands on a grid
    assert wormhole_order(UNBALANCED) is None  # the tail keeps it off every grid
    with pytest.raises(ValueError):
        sparse_ternary_height((1, 1, 1, 1))  # sums past 1


def test_sampled_function_basics():
    a, b = point("1/4", "0"), point("3/4", "0")
    fn = SampledFunction(((a, F(0)), (b, F(1, 4))), F(1))
    assert fn.value_at(point("1/4", "00")) == 0  # padded address, same point
    with pytest.raises(KeyError):
        fn.value_at(point("1/2", "0"))
    assert fn.verify_lipschitz() == F(1, 2)
    bad = SampledFunction(((a, F(0)), (b, F(3, 4))), F(1))
    with pytest.raises(RuntimeError):
        bad.verify_lipschitz()
    with pytest.raises(ValueError):
        SampledFunction(((a, F(0)), (a, F(1))), F(1))


def test_mcshane_extension():
    a, b = point("1/4", "0"), point("3/4", "0")
    fn = SampledFunction(((a, F(0)), (b, F(1, 4))), F(1))
    assert mcshane_extend(fn, a) == 0
    assert mcshane_extend(fn, b) == F(1, 4)
    # adding samples never increases the extension
    bigger = SampledFunction(((a, F(0)), (b, F(1, 4)), (point("1/2", "1"), F(0))), F(1))
    rng = random.Random(61)
    zs = [point(F(rng.randint(1, 80), 81), rng.choice(["", "0", "1", "01"])) for _ in range(40)]
    for z in zs:
        assert mcshane_extend(bigger, z) <= mcshane_extend(fn, z)
    # extension of the zero function is a distance field
    zero = SampledFunction(((a, F(0)), (b, F(0))), F(1))
    for z in zs:
        val = mcshane_extend(zero, z)
        assert val == min(distance(z, a), distance(z, b)) >= 0
    # extension stays within the Lipschitz bound on 100 random pairs
    for _ in range(100):
        x, y = rng.choice(zs), rng.choice(zs)
        d = distance(x, y)
        if d:
            assert abs(mcshane_extend(fn, x) - mcshane_extend(fn, y)) <= d


def test_sampled_function_json():
    fn = SampledFunction(((point("1/4", "0"), F(0)), (point("3/4", "0"), F(1, 4))), F(1))
    payload = fn.to_json()
    assert payload["lip_bound"] == "1"
    assert payload["samples"][0] == {"point": {"h": "1/4", "bits": "0"}, "value": "0"}


def test_flat_witness_frozen():
    x = point("1/2", "0")
    steps = triadic_schedule(1, 6)
    flat = build_flat_nondifferentiable(x, 1, 5, probe_offsets=steps)
    assert flat.levels == (1, 2, 3, 4, 5)
    f = as_point_function(flat.function)
    # gap symmetry at 1/2 pins the jump values
    for n, y in zip(flat.levels, flat.jump_points):
        gap = nearest_wormhole_gap(F(1, 2), n, Direction.UP).finite
        assert distance(x, y) == 2 * gap
        assert flat.function.value_at(y) == gap
        assert abs(f(y) - f(x)) / distance(y, x) == F(1, 2)
    report = directional_derivative(f, x, steps)
    assert report.verdict == "exists" and report.value == 0
    assert flat.sampled_ratio <= 1


def test_flat_witness_at_wormhole_center():
    x = point("1/3", "0")
    with pytest.raises(ValueError):
        build_flat_nondifferentiable(x, 1, 4)
    flat = build_flat_nondifferentiable(x, 2, 5, probe_offsets=triadic_schedule(2, 6))
    assert flat.levels == (2, 3, 4, 5)
    assert flat.sampled_ratio <= 1


def test_flat_witness_one_sided_gaps():
    # near the bottom the low orders only reach upward; the min-gap rule
    # still applies and the quotient stays exactly 1/2
    x = point("1/10", "0")
    flat = build_flat_nondifferentiable(x, 1, 5)
    f = as_point_function(flat.function)
    for y in flat.jump_points:
        assert abs(f(y) - f(x)) / distance(y, x) == F(1, 2)


def test_flat_witness_at_boundary():
    # heights 0 and 1 get the fully one-sided variant
    for h in ("0", "1"):
        x = point(h, "0")
        flat = build_flat_nondifferentiable(x, 1, 4)
        f = as_point_function(flat.function)
        assert flat.sampled_ratio <= 1
        for n, y in zip(flat.levels, flat.jump_points):
            assert distance(y, x) == F(2, 3**n)
            assert abs(f(y) - f(x)) / distance(y, x) == F(1, 2)


def test_band_schedule_search_and_validation():
    sched = find_band_schedule(MIRROR, Direction.UP, max_level=20)
    assert sched is not None and sched.levels == (2, 4, 8, 16)
    sched.validate()
    assert all(0 < s < 1 for s in sched.slopes)
    # tampering with a slope past its ramp bound is rejected
    k = 0
    too_big = (sched.ramp_bound(k) + 1) / 2 if sched.ramp_bound(k) < 1 else F(1)
    bad = BandSchedule(
        sched.center,
        sched.jump_side,
        sched.levels,
        (too_big,) + sched.slopes[1:],
        sched.thin,
        sched.wide,
    )
    with pytest.raises(ValueError):
        bad.validate()
    assert find_band_schedule(F(1, 2), Direction.UP, max_level=10) is None  # balanced height


def test_steep_witness_identities():
    x = point(MIRROR, "0")
    sched = find_band_schedule(MIRROR, Direction.UP, max_level=20)
    probes = [F(1, 3**k) for k in range(3, 12)]
    steep = build_steep_nondifferentiable(x, sched, probe_offsets=probes)
    f = as_point_function(steep.function)
    # thin-side quotients are exactly 1 at every probed scale
    for t in probes:
        if t <= sched.thin[0]:
            assert difference_quotient(f, x, t) == 1
    # jump-point quotients are exactly 1/2
    for y in steep.jump_points:
        assert abs(f(y) - f(x)) / distance(y, x) == F(1, 2)
    # jump points at successive orders are 2 * earlier thin gap apart
    for i in range(len(steep.jump_points)):
        for j in range(i + 1, len(steep.jump_points)):
            assert distance(steep.jump_points[i], steep.jump_points[j]) == 2 * sched.thin[i]
    # wide-side quotients approach 1 from below within the band-slope bound
    for k in range(len(sched.levels)):
        q = abs(difference_quotient(f, x, -sched.wide[k]))
        assert min(sched.slopes[k:]) <= q <= 1
    assert steep.sampled_ratio <= 1
    # the linear-model error at the jump points is 1/2 whatever slope is tried
    from laakso.calculus import differentiability_probe

    for candidate in (F(1), F(0), F(-2, 3)):
        probe = differentiability_probe(f, x, candidate, steep.jump_points)
        assert probe.sup_ratio == F(1, 2)


def test_steep_witness_derivative_verdict():
    # inside the innermost band the slope profile has ramped next to 1, so
    # the probed derivative settles on 1 within the band-slope tolerance
    x = point(MIRROR, "0")
    sched = find_band_schedule(MIRROR, Direction.UP, max_level=20)
    inner = sched.wide[-1]
    steps = [inner, inner / 3, inner / 9]
    steep = build_steep_nondifferentiable(x, sched, probe_offsets=steps)
    f = as_point_function(steep.function)
    tol = (1 - min(sched.slopes)) / 2
    report = directional_derivative(f, x, steps, tol=tol)
    assert report.verdict == "exists"
    assert abs(report.value - 1) <= tol


def test_steep_witness_inverted_orientation():
    x = point(UNBALANCED, "0")
    sched = find_band_schedule(UNBALANCED, Direction.DOWN, max_level=20)
    assert sched is not None and sched.jump_side is Direction.DOWN
    steep = build_steep_nondifferentiable(x, sched)
    f = as_point_function(steep.function)
    for t in sched.thin:
        assert difference_quotient(f, x, -t) == 1  # thin side is below
    for y in steep.jump_points:
        assert abs(f(y) - f(x)) / distance(y, x) == F(1, 2)


def test_steep_witness_rejects_mismatched_center():
    sched = find_band_schedule(MIRROR, Direction.UP, max_level=20)
    with pytest.raises(ValueError):
        build_steep_nondifferentiable(point("1/2", "0"), sched)
    with pytest.raises(ValueError):
        build_steep_nondifferentiable(point(sparse_ternary_height((2, 4)), "0"), sched)


def test_one_sided_steep_at_boundary():
    w = build_one_sided_steep(point("0", "0"), (1, 2, 3))
    f = as_point_function(w.function)
    for y, v in zip(w.jump_points, w.jump_values):
        assert v == F(1, 3 ** len(w.jump_values)) or v > 0  # upward reach values
        assert abs(f(y) - f(w.center)) / distance(y, w.center) == F(1, 2)
    top = build_one_sided_steep(point("1", "0"), (1, 2))
    for y in top.jump_points:
        assert abs(top.function.value_at(y)) > 0
    with pytest.raises(ValueError):
        build_one_sided_steep(point("1/2", "0"), (1, 2))


def test_porosity_witness_frozen():
    w = porosity_witness(F(2), 1, F(1, 3), F(1, 10))
    assert w.lam == F(1, 4)  # default 1 / (bound + 2)
    assert (1 - w.lam) / w.lam > w.bound
    assert w.order == 3 and F(2, 3**w.order) < F(1, 10)
    assert abs(w.anchor - F(1, 3)) < F(2, 3**w.order)
    samples = [w.anchor + w.hole_width * F(i, 11) for i in range(1, 11)]
    records = w.certify(samples)
    assert len(records) == 10
    unit = F(1, 3**w.order)
    for s in samples:
        down = nearest_wormhole_gap(s, w.order, Direction.DOWN).finite
        up = nearest_wormhole_gap(s, w.order, Direction.UP).finite
        assert down <= w.lam * unit
        assert up >= (1 - w.lam) * unit
        assert up / down > w.bound  # hence outside the balanced set
    json_cert = w.to_json(records)
    assert json_cert["order"] == 3 and len(json_cert["certified"]) == 10


def test_porosity_witness_validation():
    with pytest.raises(ValueError):
        porosity_witness(F(1), 1, F(1, 3), F(1, 10))
    with pytest.raises(ValueError):
        porosity_witness(F(2), 1, F(0), F(1, 10))
    w = porosity_witness(F(2), 1, F(1, 3), F(1, 10))
    with pytest.raises(ValueError):
        w.certify([w.anchor])  # boundary is not inside the open hole


def test_maximality_verdict_frozen():
    mv = maximality_verdict(point(UNBALANCED, "0"), F(3), 2, 32)
    assert mv.verdict == "not-in-M"
    assert mv.witness is not None
    assert set(mv.witness_quotients) == {F(1, 2)}
    ok = maximality_verdict(point("1/3", "0"), F(2), 2, 12)
    assert ok.verdict == "in-M-consistent" and ok.witness is None


def test_maximality_verdict_monotone():
    x = point(UNBALANCED, "0")
    first = maximality_verdict(x, F(3), 2, 8)
    assert first.verdict == "not-in-M"
    for depth in (16, 32):
        again = maximality_verdict(x, F(3), 2, depth)
        assert again.verdict == "not-in-M"
        assert again.probe.violated_at == first.probe.violated_at
