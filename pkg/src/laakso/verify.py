"""Shared verification harness behind the CLI `verify` command and the
acceptance test suite.

Each check function runs one family of exact cross-checks at a configurable
scale and returns `Check` rows (name, pass/fail, expected vs actual as
exact strings).  Randomized pools are fully determined by their seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import constructions as cons
from . import oracle
from .calculus import (
    PointFunction,
    difference_quotient,
    differentiability_probe,
    directional_derivative,
    triadic_schedule,
)
from .core import (
    CantorAddress,
    Direction,
    LaaksoPoint,
    canonicalize,
    format_rational,
    point,
    point_key,
    same_point,
    wormhole_order,
)
from .metric import (
    distance,
    geodesic_endings,
    minimal_height_intervals,
    required_levels,
    synthesize_geodesic,
)
from .profiles import (
    TWO_LEVEL_BRANCHES,
    classify_two_level,
    expected_kinks,
    nondiff_height_census,
    profile_distance_on_line,
    vertical_lines,
)

__all__ = [
    "Check",
    "SUITES",
    "check_census",
    "check_constructions",
    "check_geodesic_laws",
    "check_kinks",
    "check_oracle",
    "check_parallel",
    "check_porosity",
    "check_regularity",
    "run_suite",
]


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    expected: str
    actual: str

    def csv_row(self) -> list:
        return [self.name, "pass" if self.passed else "FAIL", self.expected, self.actual]


def _check(name: str, passed: bool, expected: str, actual: str) -> Check:
    return Check(name, bool(passed), expected, actual)


def _random_height(rng: random.Random, max_denominator: int = 81) -> Fraction:
    den = rng.randint(2, max_denominator)
    num = rng.randint(1, den - 1)
    return Fraction(num, den)


def _random_point(rng: random.Random, max_depth: int = 4, max_denominator: int = 81) -> LaaksoPoint:
    depth = rng.randint(0, max_depth)
    bits = "".join(rng.choice("01") for _ in range(depth))
    return LaaksoPoint(_random_height(rng, max_denominator), CantorAddress(bits))


# ---------------------------------------------------------------------------
# Oracle equivalence.
# ---------------------------------------------------------------------------


def check_oracle(m: int = 2, random_pairs: int = 500, seed: int = 1) -> List[Check]:
    """Interval-formula distance against graph shortest paths.

    All vertex pairs at the given resolution, plus seeded random pairs one
    level deeper; also checks that zero graph distance coincides exactly
    with canonical equality.
    """
    out: List[Check] = []
    g = oracle.build_level_graph(m)
    pts = [g.vertex_point(v) for v in range(g.vertex_count)]
    mismatches = 0
    zero_mismatches = 0
    total = 0
    for i, x in enumerate(pts):
        dist_map = oracle.graph_distance_map(g, x)
        for j in range(i + 1, len(pts)):
            y = pts[j]
            total += 1
            gd = dist_map[g.point_vertex(y)]
            if gd != distance(x, y):
                mismatches += 1
            if (gd == 0) != same_point(x, y):
                zero_mismatches += 1
    out.append(
        _check(f"oracle-all-pairs-m{m}", mismatches == 0, "0 mismatches", f"{mismatches}/{total}")
    )
    out.append(
        _check(
            f"oracle-zero-classes-m{m}",
            zero_mismatches == 0,
            "zero distance iff same point",
            f"{zero_mismatches} mismatches",
        )
    )

    g3 = oracle.build_level_graph(m + 1)
    rng = random.Random(seed)
    mismatches = 0
    for _ in range(random_pairs):
        vx = rng.randrange(g3.vertex_count)
        vy = rng.randrange(g3.vertex_count)
        x, y = g3.vertex_point(vx), g3.vertex_point(vy)
        if oracle.graph_distance(g3, x, y) != distance(x, y):
            mismatches += 1
    out.append(
        _check(
            f"oracle-random-pairs-m{m + 1}",
            mismatches == 0,
            "0 mismatches",
            f"{mismatches}/{random_pairs}",
        )
    )
    return out


# ---------------------------------------------------------------------------
# Minimal-interval and geodesic laws.
# ---------------------------------------------------------------------------


def check_geodesic_laws(count: int = 1000, seed: int = 2) -> List[Check]:
    """Equal interval lengths, geodesic length == distance, and the
    low-order jump bound (a short geodesic crosses at most one low wormhole:
    whenever d < 1/3**(N-1), at most one jump has order <= N-1)."""
    rng = random.Random(seed)
    bad_lengths = 0
    bad_geodesics = 0
    bad_jump_bound = 0
    checked_paths = 0
    for _ in range(count):
        x = _random_point(rng)
        y = _random_point(rng)
        ivs = minimal_height_intervals(x, y)
        if len({iv.length for iv in ivs}) != 1:
            bad_lengths += 1
        d = distance(x, y)
        for iv in ivs:
            path = synthesize_geodesic(x, y, iv)
            checked_paths += 1
            if path.length != d:
                bad_geodesics += 1
            orders = sorted(j.order for j in path.jumps)
            for n_idx in range(1, (max(orders) + 2) if orders else 1):
                if d < Fraction(1, 3 ** (n_idx - 1)):
                    if sum(1 for o in orders if o <= n_idx - 1) > 1:
                        bad_jump_bound += 1
                        break
    return [
        _check("intervals-equal-length", bad_lengths == 0, "0 unequal", f"{bad_lengths}/{count}"),
        _check(
            "geodesic-length-equals-distance",
            bad_geodesics == 0,
            "0 mismatches",
            f"{bad_geodesics}/{checked_paths}",
        ),
        _check(
            "low-order-jump-bound",
            bad_jump_bound == 0,
            "<=1 low jump on short geodesics",
            f"{bad_jump_bound} violations",
        ),
    ]


# ---------------------------------------------------------------------------
# Kink classification.
# ---------------------------------------------------------------------------


def _random_profile_point(rng: random.Random, avoid_orders: Sequence[int]) -> LaaksoPoint:
    while True:
        p = _random_point(rng, max_depth=3, max_denominator=81)
        if wormhole_order(p.height) in avoid_orders:
            continue
        return p


# Engineered two-level centers hitting every realizable branch (N=1, M=2).
_BRANCH_POOL: Tuple[Tuple[str, Fraction], ...] = (
    ("nested", Fraction(1, 2)),
    ("straddle-up", Fraction(13, 20)),
    ("straddle-down", Fraction(7, 20)),
    ("deg-low-both", Fraction(1, 10)),
    ("deg-low-far", Fraction(1, 5)),
    ("deg-low-near", Fraction(1, 4)),
    ("deg-high-both", Fraction(35, 36)),
    ("deg-high-far", Fraction(4, 5)),
    ("deg-high-near", Fraction(3, 4)),
)


def _kink_followups(p: LaaksoPoint, line, profile) -> Tuple[int, int, int]:
    """Cross-checks on a verified profile: roof kinks admit both geodesic
    endings, V kinks have unit one-sided slopes.  Returns (roof checked,
    V checked, failures)."""
    roofs = vs = bad = 0
    for kink in profile.kinks:
        left, right = profile.slopes_at(kink.height)
        if kink.kind == "max":
            roofs += 1
            q = canonicalize(LaaksoPoint(kink.height, line.base_address))
            if same_point(q, p):
                bad += 1
                continue
            if geodesic_endings(p, q) != frozenset({Direction.UP, Direction.DOWN}):
                bad += 1
            if (left, right) != (1, -1):
                bad += 1
        else:
            vs += 1
            if (left, right) != (-1, 1):
                bad += 1
    return roofs, vs, bad


def check_kinks(
    seed: int = 3,
    v0_count: int = 20,
    vn_count: int = 50,
    random_two_level: int = 25,
) -> List[Check]:
    """Profiles against closed-form kink lists on the three line families,
    with per-branch coverage of the two-level case analysis and the
    double-geodesic follow-ups on every kink found."""
    rng = random.Random(seed)
    out: List[Check] = []
    roof_total = v_total = follow_bad = 0

    bad = 0
    for _ in range(v0_count):
        p = _random_profile_point(rng, ())
        for line in vertical_lines(p, ()):
            profile = profile_distance_on_line(p, line)
            kinks = profile.kinks
            ok = (
                len(kinks) == 1
                and kinks[0].height == canonicalize(p).height
                and (kinks[0].left_slope, kinks[0].right_slope) == (-1, 1)
            )
            bad += 0 if ok else 1
            r, v, fb = _kink_followups(p, line, profile)
            roof_total += r
            v_total += v
            follow_bad += fb
    out.append(_check("v0-single-kink", bad == 0, "1 kink at h(p), slopes (-1,+1)", f"{bad} bad"))

    bad = 0
    profiles = 0
    for _ in range(vn_count):
        n = rng.randint(1, 4)
        p = _random_profile_point(rng, (n,))
        for line in vertical_lines(p, (n,)):
            profiles += 1
            profile = profile_distance_on_line(p, line)
            if profile.kink_heights() != expected_kinks(p, line):
                bad += 1
            r, v, fb = _kink_followups(p, line, profile)
            roof_total += r
            v_total += v
            follow_bad += fb
    out.append(
        _check("single-jump-kinks", bad == 0, "profile == closed form", f"{bad}/{profiles} bad")
    )

    hits: Dict[str, int] = {b: 0 for b in TWO_LEVEL_BRANCHES}
    bad = 0
    profiles = 0
    cases: List[Tuple[LaaksoPoint, Tuple[int, int]]] = []
    for _, height in _BRANCH_POOL:
        cases.append((LaaksoPoint(height, CantorAddress("0")), (1, 2)))
    for _ in range(random_two_level):
        n = rng.randint(1, 3)
        m = rng.randint(n + 1, 4)
        cases.append((_random_profile_point(rng, (n, m)), (n, m)))
    for p, (n, m) in cases:
        branch, heights = classify_two_level(canonicalize(p).height, n, m)
        hits[branch] += 1
        for line in vertical_lines(p, (n, m)):
            profiles += 1
            profile = profile_distance_on_line(p, line)
            if profile.kink_heights() != heights:
                bad += 1
            r, v, fb = _kink_followups(p, line, profile)
            roof_total += r
            v_total += v
            follow_bad += fb
    missed = [b for b, c in hits.items() if c == 0]
    out.append(
        _check("two-level-kinks", bad == 0, "profile == closed form", f"{bad}/{profiles} bad")
    )
    out.append(
        _check(
            "two-level-branch-coverage",
            not missed,
            "all branches hit: " + ",".join(TWO_LEVEL_BRANCHES),
            "hits " + ",".join(f"{b}={c}" for b, c in sorted(hits.items())),
        )
    )
    out.append(
        _check(
            "double-geodesic-endings",
            follow_bad == 0,
            "roof kinks end both ways, V kinks unit slopes",
            f"{follow_bad} bad over {roof_total} roofs, {v_total} Vs",
        )
    )
    return out


# ---------------------------------------------------------------------------
# Parallel reduction.
# ---------------------------------------------------------------------------


def check_parallel(count: int = 1000, seed: int = 4, max_level: int = 6) -> List[Check]:
    from .profiles import parallel_reduction

    rng = random.Random(seed)
    bad = 0
    for _ in range(count):
        p = _random_point(rng, max_depth=3)
        w = wormhole_order(p.height)
        pool = [n for n in range(1, max_level + 1) if n != w]
        size = rng.randint(3, min(4, len(pool)))
        levels = tuple(sorted(rng.sample(pool, size)))
        t = _random_height(rng)
        full, two = parallel_reduction(p, levels, t)
        if full != two:
            bad += 1
    return [_check("parallel-values", bad == 0, "full == two-level", f"{bad}/{count} bad")]


# ---------------------------------------------------------------------------
# Witness constructions.
# ---------------------------------------------------------------------------

# A height with doubly exponential one-sided ternary structure; the tail
# keeps it off every wormhole grid.  Its mirror image has the thin gaps
# above, which is what the two-sided steep construction probes by default.
ENGINEERED_UNBALANCED = cons.sparse_ternary_height(
    (2, 4, 8, 16, 32), tail=Fraction(1, 2 * 3**34)
)
ENGINEERED_MIRROR = 1 - ENGINEERED_UNBALANCED


def check_constructions(flat_levels: Tuple[int, int] = (1, 6)) -> List[Check]:
    out: List[Check] = []
    schedule_steps = triadic_schedule(2, 8)

    x = point("1/2", "0")
    flat = cons.build_flat_nondifferentiable(
        x, flat_levels[0], flat_levels[1], probe_offsets=schedule_steps
    )
    f = cons.as_point_function(flat.function)
    report = directional_derivative(f, x, schedule_steps)
    out.append(
        _check(
            "flat-derivative-zero",
            report.verdict == "exists" and report.value == 0,
            "exists(0)",
            f"{report.verdict}({report.value})",
        )
    )
    probe = differentiability_probe(f, x, 0, flat.jump_points)
    quot_ok = all(
        abs(f(y) - f(x)) / distance(y, x) == Fraction(1, 2) for y in flat.jump_points
    )
    out.append(
        _check(
            "flat-jump-quotients",
            quot_ok and probe.sup_ratio == Fraction(1, 2),
            "1/2 at every jump point",
            f"sup_ratio {format_rational(probe.sup_ratio)}",
        )
    )
    out.append(
        _check(
            "flat-lipschitz",
            flat.sampled_ratio <= 1,
            "pairwise ratio <= 1",
            format_rational(flat.sampled_ratio),
        )
    )

    center = point(ENGINEERED_MIRROR, "0")
    schedule = cons.find_band_schedule(center.height, Direction.UP, max_level=20)
    assert schedule is not None
    steep_probes = [Fraction(1, 3**k) for k in range(3, 12)]
    steep = cons.build_steep_nondifferentiable(center, schedule, probe_offsets=steep_probes)
    g = cons.as_point_function(steep.function)
    upper = [
        difference_quotient(g, center, t)
        for t in steep_probes + list(schedule.thin)
        if t <= schedule.thin[0]
    ]
    out.append(
        _check(
            "steep-upper-quotient-one",
            all(q == 1 for q in upper),
            "all +side quotients == 1",
            f"{sorted(set(map(format_rational, upper)))}",
        )
    )
    quot_ok = all(
        abs(g(y) - g(center)) / distance(y, center) == Fraction(1, 2)
        for y in steep.jump_points
    )
    out.append(_check("steep-jump-quotients", quot_ok, "1/2 at every jump point", str(quot_ok)))
    ramp_ok = all(
        schedule.slopes[k] <= schedule.ramp_bound(k) for k in range(len(schedule.levels))
    )
    out.append(
        _check(
            "steep-ramp-bounds",
            ramp_ok,
            "every band slope within its ramp bound",
            ",".join(format_rational(s) for s in schedule.slopes)[:60] + "...",
        )
    )
    out.append(
        _check(
            "steep-lipschitz",
            steep.sampled_ratio <= 1,
            "pairwise ratio <= 1",
            format_rational(steep.sampled_ratio),
        )
    )
    return out


# ---------------------------------------------------------------------------
# Porosity.
# ---------------------------------------------------------------------------


def check_porosity(cases: int = 20, samples_per_hole: int = 1000, seed: int = 5) -> List[Check]:
    rng = random.Random(seed)
    bad = 0
    for _ in range(cases):
        bound = Fraction(rng.randint(3, 12), rng.randint(1, 2))
        if bound <= 1:
            bound += 1
        start = rng.randint(1, 3)
        t0 = _random_height(rng)
        delta = Fraction(1, rng.randint(5, 400))
        witness = cons.porosity_witness(bound, start, t0, delta)
        width = witness.hole_width
        heights = [
            witness.anchor + width * Fraction(i, samples_per_hole + 1)
            for i in range(1, samples_per_hole + 1)
        ]
        try:
            witness.certify(heights)
        except RuntimeError:
            bad += 1
        if not (witness.order > start and Fraction(2, 3**witness.order) < delta):
            bad += 1
        if abs(witness.anchor - t0) >= Fraction(2, 3**witness.order):
            bad += 1
    return [
        _check(
            "porosity-hole-certificates",
            bad == 0,
            f"{cases} holes x {samples_per_hole} samples certified",
            f"{bad} failures",
        )
    ]


# ---------------------------------------------------------------------------
# Ball-growth regularity.
# ---------------------------------------------------------------------------


def check_regularity(m: int = 6, centers: int = 20, seed: int = 6) -> List[Check]:
    radii = [Fraction(1, 9), Fraction(1, 27), Fraction(1, 81)]
    report = oracle.regularity_scan(m, centers, radii, seed=seed)
    g = oracle.build_level_graph(m)
    total = oracle.total_cell_mass(g)
    return [
        _check(
            "regularity-spread",
            report.spread is not None and report.spread <= 100,
            "max/min ratio <= 100",
            f"{report.spread:.6g}",
        ),
        _check("total-cell-mass", total == 1, "1", format_rational(total)),
    ]


# ---------------------------------------------------------------------------
# Census.
# ---------------------------------------------------------------------------


def check_census(max_level: int = 4, seed: int = 7, extra_points: int = 2) -> List[Check]:
    """The census is finite, every census height shows up as a profiled kink
    on its source line, and sampled non-census heights on probed lines have
    matching one-sided slopes."""
    rng = random.Random(seed)
    pts = [point("1/2", "0")]
    for _ in range(extra_points):
        pts.append(_random_profile_point(rng, ()))
    bad_confirm = 0
    bad_smooth = 0
    total_heights = 0
    for p in pts:
        pc = canonicalize(p)
        census = nondiff_height_census(pc, max_level)
        total_heights += len(census)
        w = wormhole_order(pc.height)
        usable = [n for n in range(1, max_level + 1) if n != w]
        level_sets = [()] + [(n,) for n in usable] + [
            (n, m) for i, n in enumerate(usable) for m in usable[i + 1 :]
        ]
        census_set = set(census)
        for levels in level_sets:
            for line in vertical_lines(pc, levels):
                profile = profile_distance_on_line(pc, line)
                kinks = set(profile.kink_heights())
                if not kinks <= census_set:
                    bad_confirm += 1
                if levels and set(expected_kinks(pc, line)) - kinks:
                    bad_confirm += 1
                if not levels and pc.height not in kinks:
                    bad_confirm += 1
                heights = sorted(kinks | {Fraction(0), Fraction(1)})
                for a, b in zip(heights, heights[1:]):
                    mid = (a + b) / 2
                    if mid in census_set:
                        continue
                    left, right = profile.slopes_at(mid)
                    if left != right:
                        bad_smooth += 1
    return [
        _check(
            "census-confirmed-by-profiles",
            bad_confirm == 0,
            "every census height is a profiled kink on its line",
            f"{bad_confirm} bad over {total_heights} heights",
        ),
        _check(
            "non-census-heights-smooth",
            bad_smooth == 0,
            "matching one-sided slopes off the census",
            f"{bad_smooth} bad",
        ),
    ]


# ---------------------------------------------------------------------------
# Suite registry for the CLI.
# ---------------------------------------------------------------------------


def run_suite(name: str, depth: Optional[int] = None, seed: Optional[int] = None) -> List[Check]:
    if name == "oracle":
        return check_oracle(m=depth or 2, seed=seed if seed is not None else 1)
    if name == "kinks":
        return check_kinks(seed=seed if seed is not None else 3)
    if name == "constructions":
        return check_constructions()
    if name == "porosity":
        return check_porosity(seed=seed if seed is not None else 5)
    if name == "regularity":
        return check_regularity(m=depth or 6, seed=seed if seed is not None else 6)
    if name == "parallel":
        return check_parallel(seed=seed if seed is not None else 4)
    raise KeyError(name)


SUITES = ("oracle", "kinks", "constructions", "porosity", "regularity", "parallel")
