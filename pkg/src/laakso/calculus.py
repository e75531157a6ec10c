"""Difference quotients, vertical derivatives, and differentiability probes.

Functions on Laakso space are differentiated along the height coordinate
only, because geodesics are vertical runs joined by zero-length jumps.  At
a wormhole the vertical line through a point splits into two branches (one
per representative); the derivative exists there only when both branch
limits exist and agree, which is what the split verdict records.

Full differentiability at x asks the error of the best height-linear model
to vanish relative to the distance, over all nearby points rather than just
the vertical line.  No finite probe can certify that limit, so the probe
below reports an exact supremum over a caller-supplied witness pool: a
supremum bounded away from zero on shrinking pools refutes
differentiability, and the explicit witness constructions elsewhere in the
package achieve the exact value 1/2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from .core import (
    LaaksoPoint,
    canonicalize,
    format_rational,
    parse_rational,
    point_key,
    same_point,
    wormhole_order,
)
from .metric import distance

__all__ = [
    "DerivativeReport",
    "LipschitzReport",
    "PointFunction",
    "ProbeReport",
    "difference_quotient",
    "differentiability_probe",
    "directional_derivative",
    "lipschitz_supremum_check",
    "triadic_schedule",
]


@dataclass(frozen=True)
class PointFunction:
    """A real-valued function on the space, evaluated through canonical
    representatives so gluing is respected by construction.

    `lip_bound` is a declared (not verified) Lipschitz constant, used by
    checks that need one.
    """

    raw: Callable[[LaaksoPoint], Fraction]
    lip_bound: Optional[Fraction] = None
    name: str = ""

    def __call__(self, p: LaaksoPoint) -> Fraction:
        return self.raw(canonicalize(p))

    @classmethod
    def height(cls) -> "PointFunction":
        return cls(lambda p: p.height, lip_bound=Fraction(1), name="height")

    @classmethod
    def constant(cls, c) -> "PointFunction":
        c = parse_rational(c)
        return cls(lambda p: c, lip_bound=Fraction(0), name=f"const({c})")

    @classmethod
    def distance_to(cls, p: LaaksoPoint) -> "PointFunction":
        pc = canonicalize(p)
        return cls(lambda y: distance(y, pc), lip_bound=Fraction(1), name="d_p")

    @classmethod
    def combine(cls, a, f: "PointFunction", b, g: "PointFunction") -> "PointFunction":
        a, b = parse_rational(a), parse_rational(b)
        return cls(lambda p: a * f(p) + b * g(p), name=f"{a}*{f.name}+{b}*{g.name}")


def triadic_schedule(k0: int, k1: int) -> List[Fraction]:
    """Steps 1/3**k for k0 <= k <= k1, the scale ladder aligned with the
    wormhole hierarchy (triadic steps avoid straddling grids accidentally)."""
    if not (1 <= k0 <= k1):
        raise ValueError("need 1 <= k0 <= k1")
    return [Fraction(1, 3**k) for k in range(k0, k1 + 1)]


def difference_quotient(f: PointFunction, x: LaaksoPoint, t: Fraction) -> Fraction:
    """(f[x1 + t, x2] - f[x1, x2]) / t with the address held fixed.

    At a wormhole the caller selects the branch by passing the canonical
    (bit n = 0) or flipped representative; the base value is branch
    independent, the probed endpoint is not.
    """
    t = parse_rational(t)
    if t == 0:
        raise ValueError("step must be nonzero")
    if not (0 <= x.height + t <= 1):
        raise ValueError(f"step {t} leaves the unit interval from height {x.height}")
    moved = LaaksoPoint(x.height + t, x.address)
    return (f(moved) - f(x)) / t


@dataclass(frozen=True)
class DerivativeReport:
    """Outcome of probing the vertical derivative at a point.

    verdict is one of "exists" (all probed quotients within tol of one
    value), "split" (each wormhole branch settles, but on different
    values), or "divergent".  left/right limits are the branch estimates at
    a wormhole (left = smaller Cantor coordinate); away from a wormhole
    both carry the single estimate.
    """

    point: LaaksoPoint
    verdict: str
    value: Optional[Fraction]
    left_limit: Optional[Fraction]
    right_limit: Optional[Fraction]
    scales: Tuple[Fraction, ...]

    def to_json(self) -> dict:
        fmt = lambda v: None if v is None else format_rational(v)
        return {
            "point": {"h": format_rational(self.point.height), "bits": self.point.address.bits},
            "verdict": self.verdict,
            "value": fmt(self.value),
            "left": fmt(self.left_limit),
            "right": fmt(self.right_limit),
            "scales": [format_rational(s) for s in self.scales],
        }


def _branch_quotients(f, base: LaaksoPoint, steps: Sequence[Fraction]) -> List[Fraction]:
    out = []
    for s in steps:
        for t in (s, -s):
            if 0 <= base.height + t <= 1:
                out.append(difference_quotient(f, base, t))
    return out


def _settle(quotients: List[Fraction], tol: Fraction) -> Optional[Fraction]:
    """Midpoint of the quotient range if its spread fits inside 2*tol."""
    lo, hi = min(quotients), max(quotients)
    if hi - lo <= 2 * tol:
        return (hi + lo) / 2
    return None


def directional_derivative(
    f: PointFunction, x: LaaksoPoint, schedule: Sequence[Fraction], tol=Fraction(0)
) -> DerivativeReport:
    """Probe the vertical derivative of f at x over the given step schedule.

    The schedule lists positive steps, largest first; each is probed on both
    sides (one-sided at heights 0 and 1).  At a wormhole both branch lines
    are probed and must agree for an "exists" verdict.  tol = 0 demands
    exact agreement, the right default when f has rational closed form.
    """
    steps = [parse_rational(s) for s in schedule]
    if not steps or any(s <= 0 for s in steps):
        raise ValueError("schedule must list positive steps")
    if any(b > a for a, b in zip(steps, steps[1:])):
        raise ValueError("schedule must be non-increasing")
    tol = parse_rational(tol)
    xc = canonicalize(x)
    order = wormhole_order(xc.height)

    if order is None:
        qs = _branch_quotients(f, xc, steps)
        if not qs:
            raise ValueError("no probe step stays inside the unit interval")
        est = _settle(qs, tol)
        verdict = "exists" if est is not None else "divergent"
        return DerivativeReport(xc, verdict, est, est, est, tuple(steps))

    left = xc  # canonical representative, smaller Cantor coordinate
    right = LaaksoPoint(xc.height, xc.address.flipped(order))
    ql = _branch_quotients(f, left, steps)
    qr = _branch_quotients(f, right, steps)
    est_all = _settle(ql + qr, tol)
    est_l = _settle(ql, tol)
    est_r = _settle(qr, tol)
    if est_all is not None:
        return DerivativeReport(xc, "exists", est_all, est_l, est_r, tuple(steps))
    if est_l is not None and est_r is not None:
        return DerivativeReport(xc, "split", None, est_l, est_r, tuple(steps))
    return DerivativeReport(xc, "divergent", None, est_l, est_r, tuple(steps))


@dataclass(frozen=True)
class ProbeReport:
    """Exact supremum of the linear-model error ratio over a witness pool."""

    sup_ratio: Fraction
    worst_witness: LaaksoPoint

    def to_json(self) -> dict:
        return {
            "sup_ratio": format_rational(self.sup_ratio),
            "worst_witness": {
                "h": format_rational(self.worst_witness.height),
                "bits": self.worst_witness.address.bits,
            },
        }


def differentiability_probe(
    f: PointFunction, x: LaaksoPoint, candidate_d, pool: Iterable[LaaksoPoint]
) -> ProbeReport:
    """sup over the pool of |f(y) - f(x) - D*(h(y) - h(x))| / d(y, x).

    A pool sequence with shrinking radii whose supremum stays bounded away
    from zero refutes differentiability at x with derivative D.  Ties for
    the worst witness break toward the smaller (height, bits) key.
    """
    candidate_d = parse_rational(candidate_d)
    xc = canonicalize(x)
    fx = f(xc)
    best: Optional[Tuple[Fraction, tuple, LaaksoPoint]] = None
    for y in pool:
        if same_point(y, xc):
            continue
        ratio = abs(f(y) - fx - candidate_d * (y.height - xc.height)) / distance(y, xc)
        entry = (ratio, point_key(y), y)
        if best is None or ratio > best[0] or (ratio == best[0] and entry[1] < best[1]):
            best = entry
    if best is None:
        raise ValueError("witness pool is empty (or contains only x itself)")
    return ProbeReport(best[0], best[2])


@dataclass(frozen=True)
class LipschitzReport:
    sup_quotients: Fraction
    sup_derivatives: Optional[Fraction]

    def to_json(self) -> dict:
        return {
            "sup_quotients": format_rational(self.sup_quotients),
            "sup_derivatives": None
            if self.sup_derivatives is None
            else format_rational(self.sup_derivatives),
        }


def lipschitz_supremum_check(
    f: PointFunction,
    points: Sequence[LaaksoPoint],
    pairs: Sequence[Tuple[LaaksoPoint, LaaksoPoint]],
    schedule: Sequence[Fraction],
    tol=Fraction(0),
) -> LipschitzReport:
    """Compare the pairwise-quotient and derivative views of the Lipschitz
    constant on finite samples.

    The exact inequality sup |f_I| <= sup |f(x)-f(y)| / d(x,y) + tol is
    checked here (the reverse direction only holds in the limit over all
    pairs, so it is not asserted on samples).
    """
    if not points and not pairs:
        raise ValueError("need at least one sample point or pair")
    sup_q = Fraction(0)
    for a, b in pairs:
        if same_point(a, b):
            continue
        sup_q = max(sup_q, abs(f(a) - f(b)) / distance(a, b))
    sup_d: Optional[Fraction] = None
    for p in points:
        report = directional_derivative(f, p, schedule, tol)
        if report.verdict == "exists":
            v = abs(report.value)
            sup_d = v if sup_d is None else max(sup_d, v)
    if sup_d is not None and sup_d > sup_q + parse_rational(tol):
        raise RuntimeError(
            f"derivative supremum {sup_d} exceeds quotient supremum {sup_q} + tol"
        )
    return LipschitzReport(sup_q, sup_d)
