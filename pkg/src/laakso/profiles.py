"""Piecewise-linear profiles of the distance function along vertical lines.

Fix a base point p and a vertical line (a fixed Cantor address z).  The map
t -> d(p, [t, z]) is 1-Lipschitz with one-sided slopes exactly +1 or -1
away from finitely many "kink" heights where the slopes disagree.  Kinks
come in two shapes: V-shaped minima, where geodesics from p split at a
wormhole, and roof-shaped maxima, which are reached by both an upward and a
downward ending geodesic.  The union of kink heights over all lines
reachable from p is the height set where the distance to p fails to be
differentiable, and lines needing three or more jumps add no new heights
(their profiles coincide with two-jump profiles, see `parallel_reduction`).

Profiling is verification based.  Candidate breakpoints are proposed from
closed-form gap arithmetic plus every wormhole height of the involved
orders, then each gap between consecutive candidates is certified linear:
since the profile is 1-Lipschitz, |v(t1) - v(t0)| == t1 - t0 forces the
profile to be a slope +-1 line on all of [t0, t1].  Where the certificate
fails, a single interior kink is solved for exactly (the two candidate
apexes of a one-kink shape are determined by the endpoint values) and
validated by one more evaluation; only genuinely multi-kink gaps recurse.
A missed breakpoint therefore surfaces as a verification failure, never as
a silent wrong answer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .core import (
    CantorAddress,
    Direction,
    HeightInterval,
    LaaksoPoint,
    canonicalize,
    enumerate_wormhole_heights,
    format_rational,
    nearest_wormhole_gap,
    wormhole_order,
)
from .metric import distance, required_levels

__all__ = [
    "KinkProfile",
    "Piece",
    "Kink",
    "ProfileLinearityError",
    "TWO_LEVEL_BRANCHES",
    "census_records",
    "classify_two_level",
    "expected_kinks",
    "nondiff_height_census",
    "parallel_reduction",
    "profile_distance_on_line",
    "profile_to_svg",
    "vertical_lines",
    "VerticalLine",
]

_MAX_SUBDIVISION = 8


class ProfileLinearityError(RuntimeError):
    """Linearity verification failed after maximal subdivision; this signals
    a missed breakpoint candidate (an internal error, not bad input)."""


@dataclass(frozen=True)
class VerticalLine:
    """A vertical line in the space, named by its Cantor address.

    `levels` lists the jump orders that produce the line from the base
    point (empty for the point's own line).  When the base point is a
    wormhole, each level set yields two lines, one through each
    representative; `branch` is 0 for the canonical one.
    """

    base_address: CantorAddress
    label: str
    levels: Tuple[int, ...]
    branch: int = 0

    @property
    def bits(self) -> str:
        return self.base_address.bits


def vertical_lines(p: LaaksoPoint, levels: Sequence[int]) -> List[VerticalLine]:
    """The lines reached from p by jumping once at each given order.

    Orders must be distinct, increasing, and different from the wormhole
    order of p's height (those jumps are free at p and do not change the
    line).  A wormhole base point produces two lines per level set.
    """
    pc = canonicalize(p)
    levels = tuple(levels)
    if list(levels) != sorted(set(levels)):
        raise ValueError("levels must be strictly increasing")
    if any(n < 1 for n in levels):
        raise ValueError("levels must be positive")
    w = wormhole_order(pc.height)
    if w is not None and w in levels:
        raise ValueError(f"level {w} is the base point's own wormhole order")
    if not levels:
        label = "v0"
    elif len(levels) == 1:
        label = f"v{levels[0]}"
    else:
        label = "vD:" + ",".join(str(n) for n in levels)

    addr = pc.address
    for n in levels:
        addr = addr.flipped(n)
    lines = [VerticalLine(addr, label, levels, 0)]
    if w is not None:
        other = pc.address.flipped(w)
        for n in levels:
            other = other.flipped(n)
        lines.append(VerticalLine(other, label, levels, 1))
    return lines


@dataclass(frozen=True)
class Piece:
    """A maximal linear run: v(t) = slope * t + offset on [lo, hi]."""

    lo: Fraction
    hi: Fraction
    slope: int
    offset: Fraction

    def value_at(self, t: Fraction) -> Fraction:
        return self.slope * t + self.offset


@dataclass(frozen=True)
class Kink:
    height: Fraction
    left_slope: int
    right_slope: int

    @property
    def kind(self) -> str:
        """"min" for a V (-1 then +1), "max" for a roof (+1 then -1)."""
        return "min" if self.left_slope < self.right_slope else "max"


@dataclass(frozen=True)
class KinkProfile:
    line: VerticalLine
    pieces: Tuple[Piece, ...]
    kinks: Tuple[Kink, ...]

    def value_at(self, t: Fraction) -> Fraction:
        for piece in self.pieces:
            if piece.lo <= t <= piece.hi:
                return piece.value_at(t)
        raise ValueError(f"{t} outside [0, 1]")

    def slopes_at(self, t: Fraction) -> Tuple[Optional[int], Optional[int]]:
        """One-sided slopes (left, right) at t; None beyond the domain edge."""
        left = right = None
        for piece in self.pieces:
            if piece.lo < t <= piece.hi:
                left = piece.slope
            if piece.lo <= t < piece.hi:
                right = piece.slope
        return left, right

    def kink_heights(self) -> List[Fraction]:
        return [k.height for k in self.kinks]

    def to_json(self) -> dict:
        return {
            "line": {"label": self.line.label, "bits": self.line.bits, "branch": self.line.branch},
            "pieces": [
                {
                    "lo": format_rational(p.lo),
                    "hi": format_rational(p.hi),
                    "slope": p.slope,
                    "offset": format_rational(p.offset),
                }
                for p in self.pieces
            ],
            "kinks": [
                {
                    "h": format_rational(k.height),
                    "left": k.left_slope,
                    "right": k.right_slope,
                    "kind": k.kind,
                }
                for k in self.kinks
            ],
        }


def _certify(
    v: Callable[[Fraction], Fraction],
    t0: Fraction,
    v0: Fraction,
    t1: Fraction,
    v1: Fraction,
    depth: int,
    pieces: List[Tuple[Fraction, Fraction, int]],
) -> None:
    dv = v1 - v0
    dt = t1 - t0
    if dv == dt:
        pieces.append((t0, t1, 1))
        return
    if dv == -dt:
        pieces.append((t0, t1, -1))
        return
    if depth >= _MAX_SUBDIVISION:
        raise ProfileLinearityError(
            f"no linear certificate on [{t0}, {t1}] after {depth} subdivisions"
        )
    # Try a single interior kink; its apex is forced by the endpoint values.
    for s0 in (1, -1):
        tau = (t0 + t1 + s0 * dv) / 2
        if t0 < tau < t1 and v(tau) == v0 + s0 * (tau - t0):
            _certify(v, t0, v0, tau, v(tau), depth + 1, pieces)
            _certify(v, tau, v(tau), t1, v1, depth + 1, pieces)
            return
    mid = (t0 + t1) / 2
    vm = v(mid)
    _certify(v, t0, v0, mid, vm, depth + 1, pieces)
    _certify(v, mid, vm, t1, v1, depth + 1, pieces)


def _assemble(line: VerticalLine, v, breaks: List[Fraction]) -> KinkProfile:
    raw: List[Tuple[Fraction, Fraction, int]] = []
    values = {t: v(t) for t in breaks}
    for t0, t1 in zip(breaks, breaks[1:]):
        _certify(v, t0, values[t0], t1, values[t1], 0, raw)
    merged: List[Tuple[Fraction, Fraction, int]] = []
    for lo, hi, slope in raw:
        if merged and merged[-1][2] == slope and merged[-1][1] == lo:
            merged[-1] = (merged[-1][0], hi, slope)
        else:
            merged.append((lo, hi, slope))
    pieces = tuple(
        Piece(lo, hi, slope, values.get(lo, v(lo)) - slope * lo) for lo, hi, slope in merged
    )
    kinks = tuple(
        Kink(b.lo, a.slope, b.slope) for a, b in zip(pieces, pieces[1:]) if a.slope != b.slope
    )
    return KinkProfile(line, pieces, kinks)


def profile_distance_on_line(p: LaaksoPoint, line: VerticalLine) -> KinkProfile:
    """Exact profile of t -> d(p, [t, line.bits]) over [0, 1]."""
    pc = canonicalize(p)
    v_cache: Dict[Fraction, Fraction] = {}

    def v(t: Fraction) -> Fraction:
        if t not in v_cache:
            v_cache[t] = distance(pc, LaaksoPoint(t, line.base_address))
        return v_cache[t]

    involved = set(line.levels) | set(
        required_levels(pc, LaaksoPoint(pc.height, line.base_address))
    )
    w = wormhole_order(pc.height)
    if w is not None:
        involved.add(w)

    candidates = {Fraction(0), Fraction(1), pc.height}
    for n in sorted(involved):
        candidates.update(enumerate_wormhole_heights(n, HeightInterval(Fraction(0), Fraction(1))))
        up = nearest_wormhole_gap(pc.height, n, Direction.UP)
        down = nearest_wormhole_gap(pc.height, n, Direction.DOWN)
        offsets = []
        if up.is_finite:
            offsets.append(up.finite)
        if down.is_finite:
            offsets.append(-down.finite)
        if up.is_finite and down.is_finite:
            offsets.append(up.finite - down.finite)
        for off in offsets:
            t = pc.height + off
            if 0 <= t <= 1:
                candidates.add(t)
    # Tie heights between pairs of involved orders (roof kinks of two-jump
    # lines fall here when one order resolves down and the other up).
    fin = {}
    for n in sorted(involved):
        fu = nearest_wormhole_gap(pc.height, n, Direction.UP)
        fd = nearest_wormhole_gap(pc.height, n, Direction.DOWN)
        fin[n] = (fu, fd)
    for n in sorted(involved):
        for m in sorted(involved):
            if m <= n:
                continue
            for a, sa in ((fin[n][0], 1), (fin[n][1], -1)):
                for b, sb in ((fin[m][0], 1), (fin[m][1], -1)):
                    if a.is_finite and b.is_finite:
                        t = pc.height + (sa * a.finite - sb * b.finite)
                        if 0 <= t <= 1:
                            candidates.add(t)

    return _assemble(line, v, sorted(candidates))


# ---------------------------------------------------------------------------
# Closed-form kink lists.
# ---------------------------------------------------------------------------


class ImpossibleGapConfiguration(RuntimeError):
    """Raised for gap orderings that the grid geometry rules out; reaching
    one means the closed-form case analysis disagrees with the arithmetic."""


def _gaps(p1: Fraction, n: int):
    up = nearest_wormhole_gap(p1, n, Direction.UP)
    down = nearest_wormhole_gap(p1, n, Direction.DOWN)
    return up, down


def _expected_single(p1: Fraction, n: int) -> List[Fraction]:
    up, down = _gaps(p1, n)
    if up.is_finite and down.is_finite:
        tie = up.finite - down.finite  # height where down-route and up-route tie
        return sorted([p1 - down.finite, p1 + tie, p1 + up.finite])
    if up.is_finite:
        return [p1 + up.finite]
    if down.is_finite:
        return [p1 - down.finite]
    raise ImpossibleGapConfiguration(f"order {n} has no wormhole on either side of {p1}")


TWO_LEVEL_BRANCHES = (
    "nested",
    "straddle-up",
    "straddle-down",
    "deg-low-both",
    "deg-low-far",
    "deg-low-near",
    "deg-high-both",
    "deg-high-far",
    "deg-high-near",
)


def classify_two_level(p1: Fraction, n: int, m: int) -> Tuple[str, List[Fraction]]:
    """Branch label and closed-form kink heights for a two-jump line.

    Writing un/dn and um/dm for the order n and order m gaps above/below
    p1 (n < m), the realizable configurations are:

    - "nested": both order-m neighbours lie strictly inside the order-n
      window; the profile matches the single-jump one (3 kinks).
    - "straddle-up" / "straddle-down": one order-m neighbour inside, one
      outside (7 kinks, the two tie heights on both sides plus p1 itself).
    - "deg-low-*": no order-n wormhole below p1 (1 or 5 kinks); mirrored
      "deg-high-*" when there is none above.
    """
    if not (1 <= n < m):
        raise ValueError("need two orders with n < m")
    un, dn = _gaps(p1, n)
    um, dm = _gaps(p1, m)

    if not dm.is_finite and dn.is_finite:
        raise ImpossibleGapConfiguration("order-m grid reaches lower than order-n grid")
    if not um.is_finite and un.is_finite:
        raise ImpossibleGapConfiguration("order-m grid reaches higher than order-n grid")

    if not dn.is_finite and not dm.is_finite:
        if not (um.finite < un.finite):
            raise ImpossibleGapConfiguration("below the whole grid the finer gap is smaller")
        return "deg-low-both", [p1 + un.finite]
    if not dn.is_finite:
        if un.finite > um.finite:
            return "deg-low-far", [p1 + un.finite]
        heights = [
            p1 - dm.finite,
            p1,
            p1 + un.finite,
            p1 + um.finite - dm.finite,
            p1 + um.finite,
        ]
        if heights != sorted(heights):
            raise ImpossibleGapConfiguration("five-kink list out of order")
        return "deg-low-near", heights
    if not un.is_finite and not um.is_finite:
        if not (dm.finite < dn.finite):
            raise ImpossibleGapConfiguration("above the whole grid the finer gap is smaller")
        return "deg-high-both", [p1 - dn.finite]
    if not un.is_finite:
        if dn.finite > dm.finite:
            return "deg-high-far", [p1 - dn.finite]
        heights = sorted(
            [
                p1 - dm.finite,
                p1 + um.finite - dm.finite,
                p1 - dn.finite,
                p1,
                p1 + um.finite,
            ]
        )
        return "deg-high-near", heights

    # All four gaps finite.
    tie_n = un.finite - dn.finite
    tie_m = um.finite - dm.finite
    if dm.finite < dn.finite and um.finite < un.finite:
        return "nested", _expected_single(p1, n)
    if dm.finite < dn.finite and un.finite < um.finite:
        heights = [
            p1 - dn.finite,
            p1 + tie_n,
            p1 - dm.finite,
            p1,
            p1 + un.finite,
            p1 + tie_m,
            p1 + um.finite,
        ]
        if heights != sorted(heights):
            raise ImpossibleGapConfiguration("seven-kink list out of order")
        return "straddle-up", heights
    if dn.finite < dm.finite and um.finite < un.finite:
        heights = [
            p1 - dm.finite,
            p1 + tie_m,
            p1 - dn.finite,
            p1,
            p1 + um.finite,
            p1 + tie_n,
            p1 + un.finite,
        ]
        if heights != sorted(heights):
            raise ImpossibleGapConfiguration("seven-kink list out of order")
        return "straddle-down", heights
    raise ImpossibleGapConfiguration(
        "both order-m neighbours strictly outside the order-n window"
    )


def expected_kinks(p: LaaksoPoint, line: VerticalLine) -> List[Fraction]:
    """Closed-form kink heights for the line, from gap arithmetic alone.

    Covers the point's own line (one kink, at its height) and one- and
    two-jump lines; longer level sets are rejected, since their profiles
    reduce to two-jump ones (`parallel_reduction`).
    """
    pc = canonicalize(p)
    if len(line.levels) == 0:
        return [pc.height]
    if len(line.levels) == 1:
        return _expected_single(pc.height, line.levels[0])
    if len(line.levels) == 2:
        return classify_two_level(pc.height, *line.levels)[1]
    raise ValueError("closed forms cover at most two levels; use parallel_reduction")


def parallel_reduction(
    p: LaaksoPoint, levels: Sequence[int], t: Fraction
) -> Tuple[Fraction, Fraction]:
    """Distance values at height t on the full line (all listed jump orders)
    and on the line of the first two orders only; the two are equal because
    deeper jumps can be threaded through any two-order geodesic for free."""
    levels = tuple(levels)
    if len(levels) < 3:
        raise ValueError("need at least three levels; two-level lines stand alone")
    t = Fraction(t)
    if not (0 <= t <= 1):
        raise ValueError("t must lie in [0, 1]")
    pc = canonicalize(p)
    full = vertical_lines(pc, levels)[0]
    two = vertical_lines(pc, levels[:2])[0]
    value_full = distance(pc, LaaksoPoint(t, full.base_address))
    value_two = distance(pc, LaaksoPoint(t, two.base_address))
    return value_full, value_two


# ---------------------------------------------------------------------------
# Census of non-differentiability heights.
# ---------------------------------------------------------------------------

_MAX_CENSUS_LEVEL = 12


def census_records(p: LaaksoPoint, max_level: int) -> List[Tuple[Fraction, str, str]]:
    """(height, source line label, kink kind) over all lines with levels up
    to max_level.  Kinds alternate min, max, min, ... within each closed-form
    list, which the profile verification cross-checks."""
    if not (1 <= max_level <= _MAX_CENSUS_LEVEL):
        raise ValueError(f"max_level must be in 1..{_MAX_CENSUS_LEVEL}")
    pc = canonicalize(p)
    w = wormhole_order(pc.height)
    usable = [n for n in range(1, max_level + 1) if n != w]
    records: List[Tuple[Fraction, str, str]] = [(pc.height, "v0", "min")]
    level_sets = [(n,) for n in usable] + [
        (n, m) for i, n in enumerate(usable) for m in usable[i + 1 :]
    ]
    for levels in level_sets:
        line = vertical_lines(pc, levels)[0]
        heights = expected_kinks(pc, line)
        for i, h in enumerate(heights):
            records.append((h, line.label, "min" if i % 2 == 0 else "max"))
    records.sort(key=lambda r: (r[0], r[1]))
    return records


def nondiff_height_census(p: LaaksoPoint, max_level: int) -> List[Fraction]:
    """Sorted deduplicated heights at which the distance to p fails to be
    differentiable, over all lines reachable with jumps of order
    <= max_level."""
    return sorted({h for h, _, _ in census_records(p, max_level)})


# ---------------------------------------------------------------------------
# SVG rendering (string based; no plotting dependencies).
# ---------------------------------------------------------------------------


def profile_to_svg(profile: KinkProfile, width: int = 640, height: int = 360) -> str:
    """A plain line plot of the profile with kink markers."""
    margin = 40.0
    xs = [profile.pieces[0].lo] + [p.hi for p in profile.pieces]
    vmax = max(profile.value_at(t) for t in xs)
    vmax = max(vmax, Fraction(1, 100))
    span_x = width - 2 * margin
    span_y = height - 2 * margin

    def sx(t: Fraction) -> float:
        return margin + float(t) * span_x

    def sy(v: Fraction) -> float:
        return height - margin - float(v / vmax) * span_y

    pts = " ".join(f"{sx(t):.6f},{sy(profile.value_at(t)):.6f}" for t in xs)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{margin}" y1="{height - margin}" x2="{width - margin}" '
        f'y2="{height - margin}" stroke="black"/>',
        f'<line x1="{margin}" y1="{margin}" x2="{margin}" y2="{height - margin}" '
        f'stroke="black"/>',
        f'<polyline fill="none" stroke="steelblue" stroke-width="1.5" points="{pts}"/>',
    ]
    for k in profile.kinks:
        cx, cy = sx(k.height), sy(profile.value_at(k.height))
        parts.append(
            f'<circle cx="{cx:.6f}" cy="{cy:.6f}" r="3" fill="crimson">'
            f"<title>{format_rational(k.height)} ({k.kind})</title></circle>"
        )
    parts.append(
        f'<text x="{margin}" y="{margin - 10:.6f}" font-size="12" font-family="monospace">'
        f"d_p along {profile.line.label} bits={profile.line.bits or '-'}</text>"
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
