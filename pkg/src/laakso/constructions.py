"""Explicit 1-Lipschitz witness functions, porosity certificates, and the
classification of points where maximal vertical derivatives force
differentiability.

Two witness families are built here, both sampled on finite sets with every
claimed inequality checked exactly:

- a "flat" witness around a point x: zero on the vertical line through x,
  and equal to the smaller of the two order-n gaps on the point reached by
  jumping at order n and returning to x's height.  Its vertical derivative
  at x is 0, yet the linear-model error ratio at the jump points is exactly
  1/2 at every order, so it is not differentiable at x.

- a "steep" witness at a point whose gap ratios blow up on one side: an
  integral of a slope profile that is 1 on the thin-gap side and ramps to 1
  through near-1 band slopes on the wide side, again pinned to gap values
  at the jump points.  Its vertical derivative is maximal (the Lipschitz
  constant, 1) on the probed scales, and the error ratio at the jump points
  is again exactly 1/2.  Such a witness exists exactly where the gap ratios
  are unbalanced, which is what `maximality_verdict` mechanizes.

Porosity of the balanced-height set is certified hole by hole: next to any
wormhole height of a deep enough order, an explicit interval is produced on
which the down gap is tiny and the up gap is large, violating any fixed
ratio bound; the certificate records both bounds at every sampled height.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from .core import (
    Direction,
    LaaksoPoint,
    canonicalize,
    format_rational,
    gap_ratio_probe,
    GapRatioVerdict,
    nearest_wormhole_gap,
    parse_rational,
    point_key,
    point_to_json,
    wormhole_above,
    wormhole_below,
    wormhole_order,
)
from .calculus import PointFunction
from .metric import distance

__all__ = [
    "BandSchedule",
    "FlatWitness",
    "MaximalityVerdict",
    "PorosityWitness",
    "SampledFunction",
    "SteepWitness",
    "as_point_function",
    "build_flat_nondifferentiable",
    "build_one_sided_steep",
    "build_steep_nondifferentiable",
    "find_band_schedule",
    "maximality_verdict",
    "mcshane_extend",
    "porosity_witness",
    "sparse_ternary_height",
]


@dataclass(frozen=True)
class SampledFunction:
    """A function known exactly on finitely many points, with a Lipschitz
    bound that `verify_lipschitz` checks pairwise against exact distances."""

    samples: Tuple[Tuple[LaaksoPoint, Fraction], ...]
    lip_bound: Fraction

    def __post_init__(self):
        table = {}
        for p, value in self.samples:
            key = point_key(p)
            if key in table and table[key] != value:
                raise ValueError(f"conflicting values at {p}")
            table[key] = value
        object.__setattr__(self, "_table", table)

    def value_at(self, p: LaaksoPoint) -> Fraction:
        key = point_key(p)
        if key not in self._table:
            raise KeyError(f"{p} is not a sample point")
        return self._table[key]

    def __len__(self) -> int:
        return len(self._table)

    def points(self) -> List[LaaksoPoint]:
        return [p for p, _ in self.samples]

    def verify_lipschitz(self) -> Fraction:
        """Max of |f(a) - f(b)| / d(a, b) over sample pairs (exact); raises
        if it exceeds the declared bound."""
        pts = self.samples
        worst = Fraction(0)
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                a, fa = pts[i]
                b, fb = pts[j]
                d = distance(a, b)
                if d == 0:
                    if fa != fb:
                        raise RuntimeError(f"equal points {a}, {b} carry different values")
                    continue
                worst = max(worst, abs(fa - fb) / d)
        if worst > self.lip_bound:
            raise RuntimeError(f"sampled ratio {worst} exceeds bound {self.lip_bound}")
        return worst

    def to_json(self) -> dict:
        return {
            "lip_bound": format_rational(self.lip_bound),
            "samples": [
                {"point": point_to_json(p), "value": format_rational(v)}
                for p, v in self.samples
            ],
        }


def mcshane_extend(f: SampledFunction, z: LaaksoPoint) -> Fraction:
    """Inf-convolution extension: min over samples of f(a) + L * d(z, a).

    Agrees with f on sample points and is L-Lipschitz on any finite
    evaluation set; adding samples can only lower the value at any z.
    """
    if not f.samples:
        raise ValueError("cannot extend an empty sample set")
    return min(v + f.lip_bound * distance(z, a) for a, v in f.samples)


def as_point_function(f: SampledFunction, strict: bool = True) -> PointFunction:
    """Wrap a sampled function for the calculus module.

    strict=True restricts evaluation to sample points (exact values only);
    strict=False falls back to the inf-convolution extension elsewhere.
    """
    if strict:
        raw = f.value_at
    else:
        def raw(p, _f=f):
            try:
                return _f.value_at(p)
            except KeyError:
                return mcshane_extend(_f, p)

    return PointFunction(raw, lip_bound=f.lip_bound, name="sampled")


def sparse_ternary_height(exponents: Sequence[int], tail: Optional[Fraction] = None) -> Fraction:
    """sum of 2 / 3**a over the exponents, plus an optional tail term.

    With rapidly growing exponents the resulting height has wildly
    one-sided gap structure near each exponent's order, which is the raw
    material for steep witnesses.  A non-triadic tail (say 1 / (2 * 3**k))
    keeps the height off every wormhole grid.
    """
    t = sum((Fraction(2, 3**a) for a in exponents), Fraction(0))
    if tail is not None:
        t += parse_rational(tail)
    if not (0 < t < 1):
        raise ValueError("height escaped (0, 1); thin the exponents")
    return t


# ---------------------------------------------------------------------------
# Flat witness (vanishing vertical derivative, not differentiable).
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FlatWitness:
    function: SampledFunction
    center: LaaksoPoint
    levels: Tuple[int, ...]
    jump_points: Tuple[LaaksoPoint, ...]  # one per level, at the center's height
    sampled_ratio: Fraction  # verified pairwise Lipschitz ratio


def build_flat_nondifferentiable(
    x: LaaksoPoint,
    start_level: int,
    end_level: int,
    probe_offsets: Iterable[Fraction] = (),
) -> FlatWitness:
    """The flat witness around x, sampled at orders start..end.

    Samples: the vertical line through x (value 0) at x, at both gap
    endpoints of every usable order, and at the requested probe offsets;
    plus, per order n, the point reached by jumping at order n back at x's
    height, valued at the smaller finite gap.  At heights 0 and 1 only one
    side exists and the construction is one-sided.  The build verifies,
    exactly, that the jump points sit at distance twice the smaller gap and
    that every sample pair respects the Lipschitz bound 1.
    """
    xc = canonicalize(x)
    w = wormhole_order(xc.height)
    if w is not None and start_level <= w:
        raise ValueError(f"start_level must exceed the center's wormhole order {w}")
    if not (1 <= start_level <= end_level):
        raise ValueError("need 1 <= start_level <= end_level")

    samples: List[Tuple[LaaksoPoint, Fraction]] = []
    line_heights = {xc.height}
    for off in probe_offsets:
        off = parse_rational(off)
        for t in (xc.height + off, xc.height - off):
            if 0 <= t <= 1:
                line_heights.add(t)

    levels: List[int] = []
    jump_points: List[LaaksoPoint] = []
    for n in range(start_level, end_level + 1):
        above = wormhole_above(n, xc.height, strict=True)
        below = wormhole_below(n, xc.height, strict=True)
        finite = [h - xc.height for h in (above,) if h is not None]
        finite += [xc.height - h for h in (below,) if h is not None]
        if not finite:
            continue
        value = min(finite)
        for h in (above, below):
            if h is not None:
                line_heights.add(h)
        y = LaaksoPoint(xc.height, xc.address.flipped(n))
        if distance(xc, y) != 2 * value:
            raise RuntimeError(f"jump point at order {n} is not at distance 2*min-gap")
        levels.append(n)
        jump_points.append(y)
        samples.append((y, value))
    if not levels:
        raise ValueError("no usable order in the requested range")

    for t in sorted(line_heights):
        samples.append((LaaksoPoint(t, xc.address), Fraction(0)))
    fn = SampledFunction(tuple(samples), Fraction(1))
    ratio = fn.verify_lipschitz()
    return FlatWitness(fn, xc, tuple(levels), tuple(jump_points), ratio)


# ---------------------------------------------------------------------------
# Steep witness (maximal vertical derivative, not differentiable).
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BandSchedule:
    """Jump orders and band slopes for a steep witness at `center`.

    `jump_side` is the thin-gap side: jumps happen there, and the slope
    profile equals 1 there.  On the opposite (wide) side the profile takes
    the band slope slopes[k] between the order n_k and order n_{k+1} gap
    heights.  Validity (checked exactly): per order, thin gap P and wide
    gap Q are finite with

        2 * P[k] / Q[k] < 1 / n_k          (thin side much thinner),
        2 * Q[k+1] / Q[k] < 1 / n_k        (gaps collapse fast),
        P and Q strictly decreasing,

    and each slope obeys the ramp bound

        slopes[k] <= (1 - (P[k] + Q[k+1]) / Q[k]) / (1 - Q[k+1] / Q[k])

    with Q[K+1] taken as 0 for the innermost band.  The bound approaches 1
    as the ratios collapse, so slopes can ramp to 1.
    """

    center: Fraction
    jump_side: Direction
    levels: Tuple[int, ...]
    slopes: Tuple[Fraction, ...]
    thin: Tuple[Fraction, ...]
    wide: Tuple[Fraction, ...]

    def ramp_bound(self, k: int) -> Fraction:
        q_next = self.wide[k + 1] if k + 1 < len(self.levels) else Fraction(0)
        q = self.wide[k]
        return (1 - (self.thin[k] + q_next) / q) / (1 - q_next / q)

    def validate(self) -> None:
        if not self.levels:
            raise ValueError("schedule lists no orders")
        if len(self.slopes) != len(self.levels) or len(self.thin) != len(self.levels):
            raise ValueError("schedule fields must align")
        if list(self.levels) != sorted(set(self.levels)):
            raise ValueError("orders must be strictly increasing")
        up_dir = self.jump_side is Direction.UP
        for k, n in enumerate(self.levels):
            up = nearest_wormhole_gap(self.center, n, Direction.UP)
            down = nearest_wormhole_gap(self.center, n, Direction.DOWN)
            thin, wide = (up, down) if up_dir else (down, up)
            if not (thin.is_finite and wide.is_finite):
                raise ValueError(f"order {n} has an infinite gap")
            if thin.finite != self.thin[k] or wide.finite != self.wide[k]:
                raise ValueError(f"stored gaps at order {n} do not match the height")
            if not 2 * self.thin[k] * n < self.wide[k]:
                raise ValueError(f"order {n}: thin/wide gap ratio too large")
            if k + 1 < len(self.levels):
                if not (self.thin[k + 1] < self.thin[k] and self.wide[k + 1] < self.wide[k]):
                    raise ValueError("gaps must strictly decrease along the schedule")
                if not 2 * self.wide[k + 1] * n < self.wide[k]:
                    raise ValueError(f"order {n}: successive wide gaps collapse too slowly")
            if not (0 < self.slopes[k] < 1):
                raise ValueError("band slopes must lie in (0, 1)")
            if self.slopes[k] > self.ramp_bound(k):
                raise ValueError(f"band slope {k} exceeds its ramp bound")


def find_band_schedule(
    x1: Fraction,
    jump_side,
    start_level: int = 1,
    max_level: int = 48,
    max_orders: int = 6,
) -> Optional[BandSchedule]:
    """Greedy search for a valid schedule at x1, thin side as given.

    Scans orders upward, keeping each order whose thin/wide ratio beats the
    1/n threshold and whose wide gap collapses fast enough relative to the
    previously kept order.  Slopes default to the exact ramp bounds (the
    largest admissible values).  Returns None when nothing qualifies.
    """
    x1 = parse_rational(x1)
    jump_side = Direction(jump_side)
    up_dir = jump_side is Direction.UP
    levels: List[int] = []
    thin: List[Fraction] = []
    wide: List[Fraction] = []
    for n in range(start_level, max_level + 1):
        up = nearest_wormhole_gap(x1, n, Direction.UP)
        down = nearest_wormhole_gap(x1, n, Direction.DOWN)
        t, q = (up, down) if up_dir else (down, up)
        if not (t.is_finite and q.is_finite):
            continue
        if not 2 * t.finite * n < q.finite:
            continue
        if levels:
            n_prev = levels[-1]
            if not (t.finite < thin[-1] and q.finite < wide[-1]):
                continue
            if not 2 * q.finite * n_prev < wide[-1]:
                continue
        levels.append(n)
        thin.append(t.finite)
        wide.append(q.finite)
        if len(levels) == max_orders:
            break
    if not levels:
        return None
    schedule = BandSchedule(
        x1, jump_side, tuple(levels), (Fraction(1, 2),) * len(levels), tuple(thin), tuple(wide)
    )
    slopes = tuple(schedule.ramp_bound(k) for k in range(len(levels)))
    schedule = BandSchedule(x1, jump_side, tuple(levels), slopes, tuple(thin), tuple(wide))
    schedule.validate()
    return schedule


@dataclass(frozen=True)
class SteepWitness:
    function: SampledFunction
    center: LaaksoPoint
    schedule: Optional[BandSchedule]
    jump_points: Tuple[LaaksoPoint, ...]
    jump_values: Tuple[Fraction, ...]
    sampled_ratio: Fraction


def _band_integral(schedule: BandSchedule, span: Fraction) -> Fraction:
    """Integral of the banded slope profile from the center out to distance
    `span` on the wide side (span <= the outermost wide gap)."""
    total = Fraction(0)
    levels = len(schedule.levels)
    for k in range(levels):
        outer = schedule.wide[k]
        inner = schedule.wide[k + 1] if k + 1 < levels else Fraction(0)
        lo, hi = inner, min(outer, span)
        if hi > lo:
            total += schedule.slopes[k] * (hi - lo)
    return total


def build_steep_nondifferentiable(
    x: LaaksoPoint,
    schedule: BandSchedule,
    probe_offsets: Iterable[Fraction] = (),
) -> SteepWitness:
    """The steep witness at x for a validated band schedule.

    On the vertical line through x the function integrates the slope
    profile (slope 1 on the thin side, band slopes on the wide side), and
    the order n_k jump point at x's height carries the signed thin gap.
    The build verifies exactly: the jump points sit at distance twice the
    thin gap, consecutive jump points sit at distance twice the earlier
    thin gap, the line value at the thin-gap height equals the jump value,
    and every sample pair respects the Lipschitz bound 1.
    """
    xc = canonicalize(x)
    if wormhole_order(xc.height) is not None:
        raise ValueError("the two-sided construction needs a non-wormhole center")
    if schedule.center != xc.height:
        raise ValueError("schedule was computed for a different height")
    schedule.validate()
    sign = 1 if schedule.jump_side is Direction.UP else -1

    def line_value(t: Fraction) -> Fraction:
        offset = t - xc.height
        if sign * offset >= 0:  # thin side: slope exactly 1
            return offset
        return sign * -_band_integral(schedule, abs(offset))

    heights = {xc.height}
    for k, n in enumerate(schedule.levels):
        heights.add(xc.height + sign * schedule.thin[k])
        heights.add(xc.height - sign * schedule.wide[k])
    for off in probe_offsets:
        off = abs(parse_rational(off))
        if off > min(schedule.thin[0], schedule.wide[0]):
            continue
        heights.add(xc.height + off)
        heights.add(xc.height - off)

    samples: List[Tuple[LaaksoPoint, Fraction]] = []
    for t in sorted(heights):
        samples.append((LaaksoPoint(t, xc.address), line_value(t)))

    jump_points: List[LaaksoPoint] = []
    jump_values: List[Fraction] = []
    for k, n in enumerate(schedule.levels):
        y = LaaksoPoint(xc.height, xc.address.flipped(n))
        value = sign * schedule.thin[k]
        if distance(xc, y) != 2 * schedule.thin[k]:
            raise RuntimeError(f"order-{n} jump point is not at distance twice the thin gap")
        anchor = line_value(xc.height + sign * schedule.thin[k])
        if anchor != value:
            raise RuntimeError(f"order-{n} thin-gap line value does not match the jump value")
        for j in range(k):
            if distance(jump_points[j], y) != 2 * schedule.thin[j]:
                raise RuntimeError("jump points are not spaced by twice the earlier thin gap")
        jump_points.append(y)
        jump_values.append(value)
        samples.append((y, value))

    fn = SampledFunction(tuple(samples), Fraction(1))
    ratio = fn.verify_lipschitz()
    return SteepWitness(fn, xc, schedule, tuple(jump_points), tuple(jump_values), ratio)


def build_one_sided_steep(x: LaaksoPoint, levels: Sequence[int]) -> SteepWitness:
    """Boundary variant (height 0 or 1): the construction lives on the one
    available side, the slope profile is constantly 1 there, and the jump
    value at order n is the distance to the first order-n wormhole."""
    xc = canonicalize(x)
    if xc.height == 0:
        side, sign = Direction.UP, 1
    elif xc.height == 1:
        side, sign = Direction.DOWN, -1
    else:
        raise ValueError("one-sided construction is for boundary heights only")
    levels = tuple(levels)
    if not levels or list(levels) != sorted(set(levels)):
        raise ValueError("levels must be strictly increasing and nonempty")

    samples: List[Tuple[LaaksoPoint, Fraction]] = [(xc, Fraction(0))]
    jump_points: List[LaaksoPoint] = []
    jump_values: List[Fraction] = []
    for n in levels:
        gap = (
            wormhole_above(n, xc.height, strict=True)
            if sign > 0
            else wormhole_below(n, xc.height, strict=True)
        )
        if gap is None:
            raise ValueError(f"order {n} has no wormhole on the available side")
        reach = abs(gap - xc.height)
        value = sign * reach
        samples.append((LaaksoPoint(gap, xc.address), value))
        y = LaaksoPoint(xc.height, xc.address.flipped(n))
        if distance(xc, y) != 2 * reach:
            raise RuntimeError(f"order-{n} jump point is not at distance twice the reach")
        jump_points.append(y)
        jump_values.append(value)
        samples.append((y, value))
    fn = SampledFunction(tuple(samples), Fraction(1))
    ratio = fn.verify_lipschitz()
    return SteepWitness(fn, xc, None, tuple(jump_points), tuple(jump_values), ratio)


# ---------------------------------------------------------------------------
# Porosity witnesses for the balanced-height set.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PorosityWitness:
    """An explicit hole in the balanced-height set near t0.

    The hole is the open interval (anchor, anchor + lam / 3**order) just
    above a wormhole height `anchor` of the given order.  Every height s in
    the hole has down gap at most lam / 3**order and up gap at least
    (1 - lam) / 3**order at that order, hence gap ratio above
    (1 - lam) / lam, which exceeds the probed bound.
    """

    bound: Fraction
    start_level: int
    t0: Fraction
    lam: Fraction
    order: int
    anchor: Fraction

    @property
    def hole_width(self) -> Fraction:
        return self.lam / 3**self.order

    def contains(self, s: Fraction) -> bool:
        return self.anchor < s < self.anchor + self.hole_width

    def certify(self, heights: Iterable[Fraction]) -> List[dict]:
        """Exact per-height certificates; raises if any inequality fails."""
        unit = Fraction(1, 3**self.order)
        records = []
        for s in heights:
            s = parse_rational(s)
            if not self.contains(s):
                raise ValueError(f"{s} is outside the hole")
            down = nearest_wormhole_gap(s, self.order, Direction.DOWN)
            up = nearest_wormhole_gap(s, self.order, Direction.UP)
            ok_down = down.is_finite and down.finite <= self.lam * unit
            ok_up = (not up.is_finite) or up.finite >= (1 - self.lam) * unit
            if not (ok_down and ok_up):
                raise RuntimeError(f"hole certificate failed at {s}")
            records.append(
                {
                    "s": format_rational(s),
                    "down_gap": str(down),
                    "up_gap": str(up),
                    "down_bound": format_rational(self.lam * unit),
                    "up_bound": format_rational((1 - self.lam) * unit),
                }
            )
        return records

    def to_json(self, certified: Optional[List[dict]] = None) -> dict:
        out = {
            "bound": format_rational(self.bound),
            "start_level": self.start_level,
            "t0": format_rational(self.t0),
            "lambda": format_rational(self.lam),
            "order": self.order,
            "hole": [format_rational(self.anchor), format_rational(self.anchor + self.hole_width)],
        }
        if certified is not None:
            out["certified"] = certified
        return out


def porosity_witness(bound, start_level: int, t0, delta, lam=None) -> PorosityWitness:
    """A hole of relative width lam / 2 within distance 2/3**n of t0, for
    some order n with 2/3**n below delta; always exists.

    lam defaults to 1 / (bound + 2), which satisfies both lam < 1/2 and the
    ratio requirement (1 - lam) / lam = bound + 1 > bound.
    """
    bound = parse_rational(bound)
    t0 = parse_rational(t0)
    delta = parse_rational(delta)
    if bound <= 1:
        raise ValueError("ratio bound must exceed 1")
    if not (0 < t0 < 1):
        raise ValueError("t0 must be interior")
    if delta <= 0:
        raise ValueError("delta must be positive")
    lam = Fraction(1, 1) / (bound + 2) if lam is None else parse_rational(lam)
    if not (0 < lam < Fraction(1, 2)) or (1 - lam) / lam <= bound:
        raise ValueError("lambda must be in (0, 1/2) with (1-lambda)/lambda > bound")

    n = start_level + 1
    while Fraction(2, 3**n) >= delta:
        n += 1
    below = wormhole_below(n, t0, strict=False)
    above = wormhole_above(n, t0, strict=False)
    options = [h for h in (below, above) if h is not None and abs(h - t0) < Fraction(2, 3**n)]
    if not options:
        raise RuntimeError("a wormhole within 2/3^n of any interior height must exist")
    anchor = min(options, key=lambda h: (abs(h - t0), h))
    return PorosityWitness(bound, start_level, t0, lam, n, anchor)


# ---------------------------------------------------------------------------
# Maximality classification.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MaximalityVerdict:
    """Finite-depth classification of a point against one (bound, start)
    pair.

    "in-M-consistent": the gap ratios stayed balanced at every probed
    order, consistent with maximal derivatives forcing differentiability
    here (no finite probe can promote this to a certificate).

    "not-in-M": the ratios violated the bound at `probe.violated_at`, a
    persistent certificate that this (bound, start) pair fails; when an
    admissible band schedule exists within the search budget the attached
    steep witness demonstrates the failure concretely, with error ratio
    exactly 1/2 at its jump points.
    """

    point: LaaksoPoint
    probe: GapRatioVerdict
    witness: Optional[SteepWitness]
    witness_quotients: Tuple[Fraction, ...]

    @property
    def verdict(self) -> str:
        return "in-M-consistent" if self.probe.consistent else "not-in-M"


def maximality_verdict(
    x: LaaksoPoint,
    bound,
    start_level: int,
    depth: int,
    search_depth: Optional[int] = None,
) -> MaximalityVerdict:
    """Probe x's height and, on violation, build the steep witness.

    The witness orientation follows the violating side: if the up gap
    dwarfs the down gap the jumps go down, and vice versa.  For wormhole
    centers (where the two-sided construction is unavailable) or when no
    admissible schedule exists within the search budget, the verdict still
    carries the violation certificate, just no witness.
    """
    xc = canonicalize(x)
    bound = parse_rational(bound)
    probe = gap_ratio_probe(xc.height, bound, start_level, depth)
    if probe.consistent:
        return MaximalityVerdict(xc, probe, None, ())

    n = probe.violated_at
    up = nearest_wormhole_gap(xc.height, n, Direction.UP)
    down = nearest_wormhole_gap(xc.height, n, Direction.DOWN)
    if not up.is_finite:
        side = Direction.DOWN
    elif not down.is_finite:
        side = Direction.UP
    else:
        side = Direction.DOWN if up.finite > down.finite else Direction.UP

    witness = None
    quotients: Tuple[Fraction, ...] = ()
    if wormhole_order(xc.height) is None:
        limit = search_depth if search_depth is not None else max(2 * depth, n + 16)
        schedule = find_band_schedule(xc.height, side, start_level=start_level, max_level=limit)
        if schedule is None:
            other = Direction.UP if side is Direction.DOWN else Direction.DOWN
            schedule = find_band_schedule(xc.height, other, start_level=start_level, max_level=limit)
        if schedule is not None:
            witness = build_steep_nondifferentiable(xc, schedule)
            fx = witness.function.value_at(xc)
            quotients = tuple(
                abs(witness.function.value_at(y) - fx) / distance(y, xc)
                for y in witness.jump_points
            )
    return MaximalityVerdict(xc, probe, witness, quotients)
