"""Components of a bead: cone surfaces, mantel, rim plane, half-beads, and the
initial contact of two growing (or shrinking) cones."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .core import Bead, Cone, Side, TimeSpacePoint, Tolerance, tolerance_for


@dataclass(frozen=True, slots=True)
class RimPlane:
    """Plane ``a_t*t + a_x*x + a_y*y + a_0 = 0`` holding the rim of a bead.

    ``value(p)`` is positive on the destination side: it equals the top-cone
    excess minus the bottom-cone excess of ``p``.
    """

    a_t: float
    a_x: float
    a_y: float
    a_0: float

    @classmethod
    def of(cls, b: Bead) -> RimPlane:
        p, q, v2 = b.origin, b.destination, b.vmax**2
        return cls(
            a_t=-2.0 * v2 * (p.t - q.t),
            a_x=2.0 * (p.x - q.x),
            a_y=2.0 * (p.y - q.y),
            a_0=q.x**2 - p.x**2 + q.y**2 - p.y**2 - v2 * (q.t**2 - p.t**2),
        )

    def value(self, pt: TimeSpacePoint) -> float:
        return self.a_t * pt.t + self.a_x * pt.x + self.a_y * pt.y + self.a_0


def cone_excess(c: Cone, p: TimeSpacePoint) -> float:
    """Squared distance to the axis minus squared radius at ``p.t``."""
    a = c.apex
    return (p.x - a.x) ** 2 + (p.y - a.y) ** 2 - (p.t - a.t) ** 2 * c.vmax**2


def _on_cone(c: Cone, p: TimeSpacePoint, tol: Tolerance) -> bool:
    if c.orientation is Side.BOTTOM:
        if p.t < c.apex.t - tol.t:
            return False
    elif p.t > c.apex.t + tol.t:
        return False
    return abs(cone_excess(c, p)) <= tol.sq


def on_bottom_cone(c: Cone, p: TimeSpacePoint, tol: Optional[Tolerance] = None) -> bool:
    if c.orientation is not Side.BOTTOM:
        raise ValueError("expected a bottom cone")
    return _on_cone(c, p, tol or _cone_tol(c, p))


def on_top_cone(c: Cone, p: TimeSpacePoint, tol: Optional[Tolerance] = None) -> bool:
    if c.orientation is not Side.TOP:
        raise ValueError("expected a top cone")
    return _on_cone(c, p, tol or _cone_tol(c, p))


def _cone_tol(c: Cone, p: TimeSpacePoint) -> Tolerance:
    return tolerance_for(Bead(c.apex, c.apex, c.vmax), points=(p,))


def _in_slab(b: Bead, p: TimeSpacePoint, tol: Tolerance) -> bool:
    return b.origin.t - tol.t <= p.t <= b.destination.t + tol.t


def on_mantel(b: Bead, p: TimeSpacePoint, tol: Optional[Tolerance] = None) -> bool:
    tol = tol or tolerance_for(b, points=(p,))
    if not _in_slab(b, p, tol):
        return False
    side = RimPlane.of(b).value(p)
    if side <= tol.sq and abs(cone_excess(b.bottom_cone(), p)) <= tol.sq:
        return True
    return side >= -tol.sq and abs(cone_excess(b.top_cone(), p)) <= tol.sq


def on_rim(b: Bead, p: TimeSpacePoint, tol: Optional[Tolerance] = None) -> bool:
    tol = tol or tolerance_for(b, points=(p,))
    return (
        _in_slab(b, p, tol)
        and abs(cone_excess(b.bottom_cone(), p)) <= tol.sq
        and abs(RimPlane.of(b).value(p)) <= tol.sq
    )


def in_half_bead(b: Bead, p: TimeSpacePoint, side: Side, tol: Optional[Tolerance] = None) -> bool:
    tol = tol or tolerance_for(b, points=(p,))
    if not _in_slab(b, p, tol):
        return False
    plane = RimPlane.of(b).value(p)
    if side is Side.BOTTOM:
        return plane <= tol.sq and cone_excess(b.bottom_cone(), p) <= tol.sq
    return plane >= -tol.sq and cone_excess(b.top_cone(), p) <= tol.sq


def on_half_mantel(b: Bead, p: TimeSpacePoint, side: Side, tol: Tolerance) -> bool:
    """``p`` lies on the bottom (or top) cone surface of ``b`` within that half-bead."""
    cone = b.bottom_cone() if side is Side.BOTTOM else b.top_cone()
    return in_half_bead(b, p, side, tol) and abs(cone_excess(cone, p)) <= tol.sq


def contact_point(c1: Cone, c2: Cone) -> Optional[TimeSpacePoint]:
    """Closed-form touching point of two same-orientation cones, unchecked.

    Returns None when the combined speed is zero.  Coincident apex locations
    give the point on the shared axis where the radii sum to zero.
    """
    v1, v2 = c1.vmax, c2.vmax
    if v1 + v2 == 0.0:
        return None
    a, b = c1.apex, c2.apex
    dist = math.hypot(b.x - a.x, b.y - a.y)
    if c1.orientation is Side.BOTTOM:
        t = (dist + a.t * v1 + b.t * v2) / (v1 + v2)
        radius = v1 * (t - a.t)
    else:
        t = (a.t * v1 + b.t * v2 - dist) / (v1 + v2)
        radius = v1 * (a.t - t)
    if dist == 0.0:
        return TimeSpacePoint(t, a.x, a.y)
    return TimeSpacePoint(t, a.x + radius * (b.x - a.x) / dist, a.y + radius * (b.y - a.y) / dist)


def initial_contact(c1: Cone, c2: Cone) -> TimeSpacePoint:
    """First time-space point where the circles of two bottom cones touch
    (for top cones, the last one, by time reflection).

    Raises ValueError for mixed orientations, zero combined speed, coincident
    apex locations, or an apex strictly inside the other cone.
    """
    if c1.orientation is not c2.orientation:
        raise ValueError("cones must have the same orientation")
    if c1.vmax + c2.vmax == 0.0:
        raise ValueError("both cones have zero speed: no contact")
    a, b = c1.apex, c2.apex
    dist = math.hypot(b.x - a.x, b.y - a.y)
    if dist == 0.0:
        raise ValueError("apexes coincide spatially: no unique contact direction")
    sign = 1.0 if c1.orientation is Side.BOTTOM else -1.0
    tol = tolerance_for(Bead(a, a, c1.vmax), Bead(b, b, c2.vmax))
    lin = math.sqrt(tol.sq)
    # apex strictly inside the other (closed) cone violates the contact setup
    if sign * (b.t - a.t) > 0 and dist < c1.vmax * abs(b.t - a.t) - lin:
        raise ValueError("second apex lies inside the first cone")
    if sign * (a.t - b.t) > 0 and dist < c2.vmax * abs(a.t - b.t) - lin:
        raise ValueError("first apex lies inside the second cone")
    p = contact_point(c1, c2)
    assert p is not None
    return p
