"""Exact bead-vs-bead intersection by case analysis.

Two non-empty beads meet if and only if one of three things happens:

* **I**   an apex of one bead lies in the other;
* **II**  the rim of one bead meets a half-mantel of the other;
* **III** the initial contact of the two bottom cones, or of the two top
  cones, lies in both beads.

Case II works in a frame where the rim owner sits at the origin with its
destination on the positive x-axis.  There the rim is parametrized by ``x``
alone, and meeting a cone surface reduces to a polynomial of degree at most
four in ``x``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Optional

from .core import (
    AlibiVerdict,
    Bead,
    Case,
    Side,
    TimeSpacePoint,
    Tolerance,
    bead_contains_point,
    bead_nonempty,
    tolerance_for,
)
from .geometry import contact_point, in_half_bead, on_half_mantel
from .polyroots import Poly4, real_roots

ROOT_TOL = 1e-9
_ZERO_POLY = 1e-12


@dataclass(frozen=True, slots=True)
class Frame:
    """Speed-preserving map: translate the anchor origin to zero, then rotate
    and scale by the anchor's spatial displacement (or mirror in x when the
    displacement is already horizontal and points the wrong way)."""

    t0: float
    x0: float
    y0: float
    dx: float
    dy: float
    scale: float
    rotate: bool
    mirror: bool

    @classmethod
    def for_anchor(cls, anchor: Bead) -> Frame:
        p, q = anchor.origin, anchor.destination
        dx, dy = q.x - p.x, q.y - p.y
        if dy != 0.0:
            return cls(p.t, p.x, p.y, dx, dy, math.hypot(dx, dy), True, False)
        return cls(p.t, p.x, p.y, dx, dy, 1.0, False, dx < 0.0)

    @classmethod
    def isometric(cls, anchor: Bead) -> Frame:
        """Rotation by the unit displacement, no scaling; tiny displacements stay representable."""
        p, q = anchor.origin, anchor.destination
        dx, dy = q.x - p.x, q.y - p.y
        if dy == 0.0:
            return cls(p.t, p.x, p.y, dx, dy, 1.0, False, dx < 0.0)
        s = math.hypot(dx, dy)
        return cls(p.t, p.x, p.y, dx / s, dy / s, 1.0, True, False)

    @classmethod
    def rotation_scaling(cls, anchor: Bead) -> Frame:
        """The rotate-and-scale map even for a horizontal anchor (needs distinct locations)."""
        p, q = anchor.origin, anchor.destination
        dx, dy = q.x - p.x, q.y - p.y
        s = math.hypot(dx, dy)
        if s == 0.0:
            raise ValueError("anchor apexes share a location")
        return cls(p.t, p.x, p.y, dx, dy, s, True, False)

    def forward(self, p: TimeSpacePoint) -> TimeSpacePoint:
        t, x, y = p.t - self.t0, p.x - self.x0, p.y - self.y0
        if self.rotate:
            return TimeSpacePoint(t * self.scale, x * self.dx + y * self.dy, -x * self.dy + y * self.dx)
        return TimeSpacePoint(t, -x if self.mirror else x, y)

    def inverse(self, p: TimeSpacePoint) -> TimeSpacePoint:
        if self.rotate:
            # two divisions by scale rather than one by scale**2, which can underflow
            s = self.scale
            x = (p.x * (self.dx / s) - p.y * (self.dy / s)) / s
            y = (p.x * (self.dy / s) + p.y * (self.dx / s)) / s
            return TimeSpacePoint(p.t / self.scale + self.t0, x + self.x0, y + self.y0)
        x = -p.x if self.mirror else p.x
        return TimeSpacePoint(p.t + self.t0, x + self.x0, p.y + self.y0)

    def bead(self, b: Bead) -> Bead:
        return Bead(self.forward(b.origin), self.forward(b.destination), b.vmax)


@dataclass(frozen=True, slots=True)
class NormalizedPair:
    """Both beads in the anchor's frame.  ``anchor.origin`` is (0, 0, 0) and
    ``anchor.destination`` has y = 0 and x >= 0."""

    anchor: Bead
    other: Bead
    frame: Frame


def normalize_pair(
    b1: Bead,
    b2: Bead,
    anchor: Literal["first", "second"] = "first",
    *,
    isometric: bool = False,
) -> NormalizedPair:
    """Move the anchor to the origin with its destination on the positive x-axis.

    By default the rotation is scaled by the anchor's displacement length,
    which multiplies every coordinate by that length; when it is so small that
    the scaled coordinates leave the normal float range, precision is lost.
    ``isometric`` keeps lengths unchanged instead and has no such limit.
    """
    if anchor not in ("first", "second"):
        raise ValueError(f"anchor must be 'first' or 'second', got {anchor!r}")
    a, o = (b1, b2) if anchor == "first" else (b2, b1)
    if not a.origin.t < a.destination.t:
        raise ValueError("anchor bead must span a positive time interval")
    frame = Frame.isometric(a) if isometric else Frame.for_anchor(a)
    return NormalizedPair(frame.bead(a), frame.bead(o), frame)


@dataclass(frozen=True, slots=True)
class CaseIIContext:
    """Rim of ``pair.anchor`` against the ``side`` cone of ``pair.other``.

    On the rim, ``t = t_coef[0]*x + t_coef[1]`` and ``y**2 = rim_sq(x)``.  The
    other cone's surface gives ``2*y*yc = cross(x)``, and squaring that gives
    ``quartic(x) = cross(x)**2 - 4*yc**2*rim_sq(x) = 0``.  Polynomials are
    stored as coefficient tuples, highest degree first.
    """

    pair: NormalizedPair
    side: Side
    quartic: Poly4
    rim_sq: tuple[float, float, float]
    t_coef: tuple[float, float]
    cross: tuple[float, float, float]
    yc: float
    degenerate: bool
    tol: Tolerance


def _horner(coeffs: tuple[float, ...], x: float) -> float:
    acc = 0.0
    for c in coeffs:
        acc = acc * x + c
    return acc


def case_ii_context(pair: NormalizedPair, side: Side) -> CaseIIContext:
    a, o = pair.anchor, pair.other
    v, T, X = a.vmax, a.destination.t, a.destination.x
    if v == 0.0 or T == 0.0:
        raise ValueError("rim parametrization needs a positive speed and duration")
    apex = o.origin if side is Side.BOTTOM else o.destination
    w, tc, xc, yc = o.vmax, apex.t, apex.x, apex.y
    v2, w2 = v * v, w * w

    alpha = X / (v2 * T)
    beta = (v2 * T * T - X * X) / (2.0 * v2 * T)
    rho = (v2 * alpha * alpha - 1.0, 2.0 * v2 * alpha * beta, v2 * beta * beta)
    bt = beta - tc
    r2 = alpha * alpha * (v2 - w2)
    r1 = 2.0 * v2 * alpha * beta - 2.0 * xc - 2.0 * w2 * alpha * bt
    r0 = v2 * beta * beta + xc * xc + yc * yc - w2 * bt * bt
    k = 4.0 * yc * yc
    coeffs = (
        r2 * r2,
        2.0 * r2 * r1,
        r1 * r1 + 2.0 * r2 * r0 - k * rho[0],
        2.0 * r1 * r0 - k * rho[1],
        r0 * r0 - k * rho[2],
    )
    # size of the un-cancelled terms, to tell a vanishing polynomial from a small one
    mag_r = (
        alpha * alpha * (v2 + w2)
        + abs(2.0 * v2 * alpha * beta) + 2.0 * abs(xc) + abs(2.0 * w2 * alpha * bt)
        + v2 * beta * beta + xc * xc + yc * yc + w2 * bt * bt
    )
    mag = mag_r * mag_r + k * (abs(rho[0]) + abs(rho[1]) + abs(rho[2]))
    degenerate = max(abs(c) for c in coeffs) <= _ZERO_POLY * mag
    return CaseIIContext(
        pair=pair,
        side=side,
        quartic=Poly4(*coeffs),
        rim_sq=rho,
        t_coef=(alpha, beta),
        cross=(r2, r1, r0),
        yc=yc,
        degenerate=degenerate,
        tol=tolerance_for(a, o),
    )


def rim_mantel_candidates(ctx: CaseIIContext) -> list[float]:
    """Rim abscissae where the rim meets the targeted cone surface.

    Real roots of the quartic at which the rim exists (``rim_sq >= 0``).  When
    the quartic vanishes identically the whole rim lies on the cone; the rim is
    then sampled densely instead.
    """
    if ctx.degenerate:
        xs = _rim_support(ctx)
        if xs is None:
            return []
        lo, hi = xs
        n = 64
        return [lo + (hi - lo) * i / n for i in range(n + 1)]
    # solve in units of the anchor's extent so the degree cutoff does not depend on the unit of length
    a = ctx.pair.anchor.destination
    unit = max(abs(a.t), abs(a.x))
    balanced = Poly4(*(c * unit ** (4 - i) for i, c in enumerate(ctx.quartic.coefficients())))
    xs = [unit * u for u in real_roots(balanced, ROOT_TOL)]
    return [x for x in xs if _horner(ctx.rim_sq, x) >= -ctx.tol.sq]


def _rim_support(ctx: CaseIIContext) -> Optional[tuple[float, float]]:
    a, b, c = ctx.rim_sq
    if a >= 0.0:
        return None
    disc = b * b - 4.0 * a * c
    if disc < 0.0:
        return None
    s = math.sqrt(disc)
    return tuple(sorted(((-b + s) / (2.0 * a), (-b - s) / (2.0 * a))))  # type: ignore[return-value]


def rim_point_from_x(ctx: CaseIIContext, x: float) -> tuple[TimeSpacePoint, ...]:
    """Rim point(s) of the anchor bead at abscissa ``x``, in the normalized frame.

    The sign of ``y`` comes from the cone relation ``2*y*yc = cross(x)``; when
    ``yc`` is zero, or that relation cannot fix the sign, both mirror points
    are returned.
    """
    rho = _horner(ctx.rim_sq, x)
    if rho < -ctx.tol.sq:
        raise ValueError(f"x={x} is outside the rim's support")
    alpha, beta = ctx.t_coef
    t = alpha * x + beta
    y = math.sqrt(max(rho, 0.0))
    if y == 0.0:
        return (TimeSpacePoint(t, x, 0.0),)
    if ctx.yc != 0.0:
        cross = _horner(ctx.cross, x)
        if abs(cross) > 1e-7 * 2.0 * abs(ctx.yc) * y:
            return (TimeSpacePoint(t, x, math.copysign(y, cross * ctx.yc)),)
    return (TimeSpacePoint(t, x, y), TimeSpacePoint(t, x, -y))


def _rim_meets_half_mantel(ctx: CaseIIContext) -> Optional[TimeSpacePoint]:
    anchor, other, tol = ctx.pair.anchor, ctx.pair.other, ctx.tol
    T = anchor.destination.t
    for x in rim_mantel_candidates(ctx):
        for p in rim_point_from_x(ctx, x):
            if not -tol.t <= p.t <= T + tol.t:
                continue
            if on_half_mantel(other, p, ctx.side, tol):
                return ctx.pair.frame.inverse(p)
    return None


def _main_path(b1: Bead, b2: Bead) -> bool:
    return b1.origin.t < b1.destination.t and b2.origin.t < b2.destination.t


def _case_i(b1: Bead, b2: Bead, tol: Tolerance) -> Optional[TimeSpacePoint]:
    for apex, bead in ((b2.origin, b1), (b2.destination, b1), (b1.origin, b2), (b1.destination, b2)):
        if bead_contains_point(bead, apex, tol):
            return apex
    return None


def _case_ii(b1: Bead, b2: Bead) -> Optional[TimeSpacePoint]:
    for anchor in ("first", "second"):
        pair = normalize_pair(b1, b2, anchor, isometric=True)
        for side in (Side.BOTTOM, Side.TOP):
            hit = _rim_meets_half_mantel(case_ii_context(pair, side))
            if hit is not None:
                return hit
    return None


def _case_iii(b1: Bead, b2: Bead, tol: Tolerance) -> Optional[TimeSpacePoint]:
    for side, c1, c2 in (
        (Side.BOTTOM, b1.bottom_cone(), b2.bottom_cone()),
        (Side.TOP, b1.top_cone(), b2.top_cone()),
    ):
        p = contact_point(c1, c2)
        if p is not None and in_half_bead(b1, p, side, tol) and in_half_bead(b2, p, side, tol):
            return p
    return None


def _both_nonempty(b1: Bead, b2: Bead, tol: Tolerance) -> bool:
    return bead_nonempty(b1, tol) and bead_nonempty(b2, tol)


def case_i(b1: Bead, b2: Bead) -> Optional[TimeSpacePoint]:
    """First apex (b2's, then b1's) contained in the other bead."""
    tol = tolerance_for(b1, b2)
    if not _both_nonempty(b1, b2, tol):
        return None
    return _case_i(b1, b2, tol)


def case_ii(b1: Bead, b2: Bead) -> Optional[TimeSpacePoint]:
    """A rim point of one bead on a half-mantel of the other, given that no
    apex is contained and both speeds are positive."""
    tol = tolerance_for(b1, b2)
    if not (_both_nonempty(b1, b2, tol) and _main_path(b1, b2)):
        return None
    if b1.vmax == 0.0 or b2.vmax == 0.0 or _case_i(b1, b2, tol) is not None:
        return None
    return _case_ii(b1, b2)


def case_iii(b1: Bead, b2: Bead) -> Optional[TimeSpacePoint]:
    """Bottom or top initial contact lying in both beads, given that no apex
    is contained."""
    tol = tolerance_for(b1, b2)
    if not (_both_nonempty(b1, b2, tol) and _main_path(b1, b2)):
        return None
    if b1.vmax + b2.vmax == 0.0 or _case_i(b1, b2, tol) is not None:
        return None
    return _case_iii(b1, b2, tol)


def segment_meets_bead(seg: Bead, other: Bead, tol: Optional[Tolerance] = None) -> Optional[TimeSpacePoint]:
    """Earliest common point of a zero-speed bead (a vertical segment) and another bead."""
    tol = tol or tolerance_for(seg, other)
    if seg.vmax != 0.0:
        raise ValueError("expected a zero-speed bead")
    x0, y0 = seg.origin.x, seg.origin.y
    p, q, w = other.origin, other.destination, other.vmax
    lo = max(seg.origin.t, p.t)
    hi = min(seg.destination.t, q.t)
    if w > 0.0:
        lo = max(lo, p.t + math.hypot(x0 - p.x, y0 - p.y) / w)
        hi = min(hi, q.t - math.hypot(x0 - q.x, y0 - q.y) / w)
    if lo <= hi:
        t = lo
    elif w > 0.0 and q.t > p.t:
        # empty up to rounding: take the time where both squared cone violations are equal
        dp = (x0 - p.x) ** 2 + (y0 - p.y) ** 2
        dq = (x0 - q.x) ** 2 + (y0 - q.y) ** 2
        t = 0.5 * (p.t + q.t) + (dp - dq) / (2.0 * w * w * (q.t - p.t))
    else:
        t = 0.5 * (lo + hi)
    t = min(max(t, seg.origin.t, p.t), seg.destination.t, q.t)
    cand = TimeSpacePoint(t, x0, y0)
    if bead_contains_point(seg, cand, tol) and bead_contains_point(other, cand, tol):
        return cand
    return None


def beads_intersect(b1: Bead, b2: Bead) -> AlibiVerdict:
    """Decide whether two beads share a point; total over all inputs.

    Empty beads meet nothing.  Cases are tried in the order I, II, III and
    the first success is reported together with its witness point.
    """
    tol = tolerance_for(b1, b2)
    if not _both_nonempty(b1, b2, tol):
        return AlibiVerdict(False, Case.NONE)
    if max(b1.origin.t, b2.origin.t) > min(b1.destination.t, b2.destination.t):
        return AlibiVerdict(False, Case.NONE)
    hit = _case_i(b1, b2, tol)
    if hit is not None:
        return AlibiVerdict(True, Case.I, hit)
    if not _main_path(b1, b2):
        # a point bead meets the other bead only through its apex
        return AlibiVerdict(False, Case.NONE)
    if b1.vmax == 0.0 or b2.vmax == 0.0:
        seg, other = (b1, b2) if b1.vmax == 0.0 else (b2, b1)
        hit = segment_meets_bead(seg, other, tol)
        if hit is not None:
            return AlibiVerdict(True, Case.III, hit)
        return AlibiVerdict(False, Case.NONE)
    hit = _case_ii(b1, b2)
    if hit is not None:
        return AlibiVerdict(True, Case.II, hit)
    hit = _case_iii(b1, b2, tol)
    if hit is not None:
        return AlibiVerdict(True, Case.III, hit)
    return AlibiVerdict(False, Case.NONE)
