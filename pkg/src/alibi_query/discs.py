"""Closed-disc intersection tests for two, three and four discs.

Three discs share a point exactly when one center lies in the other two
discs, or when a crossing point of two bordering circles lies in the third
disc.  The crossing-point test runs in a frame where the first circle is the
unit circle at the origin and the second center is on the positive x-axis,
and it is squared out so that no square root enters the decision.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .core import EPS, Bead, Disc, time_slice

Point = tuple[float, float]


@dataclass(frozen=True, slots=True)
class CirclePair:
    """Two circles seen from the first: ``x2`` and ``r2`` are the second
    center's distance and radius after scaling the first radius to 1."""

    c1: Disc
    c2: Disc

    @property
    def dist_sq(self) -> float:
        return (self.c2.cx - self.c1.cx) ** 2 + (self.c2.cy - self.c1.cy) ** 2

    @property
    def x2(self) -> float:
        return math.sqrt(self.dist_sq) / self.c1.r

    @property
    def r2(self) -> float:
        return self.c2.r / self.c1.r

    def to_local(self, p: Point) -> Point:
        d = math.sqrt(self.dist_sq)
        ux, uy = (self.c2.cx - self.c1.cx) / d, (self.c2.cy - self.c1.cy) / d
        dx, dy = p[0] - self.c1.cx, p[1] - self.c1.cy
        return ((dx * ux + dy * uy) / self.c1.r, (-dx * uy + dy * ux) / self.c1.r)

    def to_world(self, p: Point) -> Point:
        d = math.sqrt(self.dist_sq)
        ux, uy = (self.c2.cx - self.c1.cx) / d, (self.c2.cy - self.c1.cy) / d
        r = self.c1.r
        return (self.c1.cx + r * (p[0] * ux - p[1] * uy), self.c1.cy + r * (p[0] * uy + p[1] * ux))


def _sq_tol(*discs: Disc) -> float:
    m = max(max(abs(d.cx), abs(d.cy), d.r) for d in discs)
    return EPS * m * m


def _in_disc(p: Point, d: Disc, tol: float) -> bool:
    return (p[0] - d.cx) ** 2 + (p[1] - d.cy) ** 2 <= d.r * d.r + tol


def _overlap(a: Disc, b: Disc, tol: float) -> bool:
    return (a.cx - b.cx) ** 2 + (a.cy - b.cy) ** 2 <= (a.r + b.r) ** 2 + tol


def _crossing(x2: float, r2: float) -> tuple[float, float]:
    """Crossing abscissa ``X`` and squared ordinate ``Y2`` of the unit circle and
    the circle of radius ``r2`` centered at ``(x2, 0)``; ``Y2 < 0`` means no crossing.

    ``Y2 = (r2**2 - (x2 - 1)**2) * ((1 + x2)**2 - r2**2) / (4 * x2**2)``, grouped
    so that nearly coincident circles neither cancel nor underflow.
    """
    x = 0.5 * x2 + (1.0 - r2) * (1.0 + r2) / (2.0 * x2)
    f1, f2 = (r2 + 1.0) - x2, (r2 - 1.0) + x2
    f3, f4 = (1.0 - r2) + x2, (1.0 + r2) + x2
    return x, (f1 * f4 / (2.0 * x2)) * (f2 * f3 / (2.0 * x2))


def circle_circle_intersection(c1: Disc, c2: Disc) -> tuple[Point, ...]:
    """Common points of two circle borders: none, one (tangency) or two."""
    if c1 == c2:
        raise ValueError("coincident circles")
    tol = _sq_tol(c1, c2)
    if c1.r == 0.0 or c2.r == 0.0:
        pt, other = (c1, c2) if c1.r == 0.0 else (c2, c1)
        gap = (pt.cx - other.cx) ** 2 + (pt.cy - other.cy) ** 2 - other.r**2
        return ((pt.cx, pt.cy),) if abs(gap) <= tol else ()
    pair = CirclePair(c1, c2)
    if pair.dist_sq == 0.0:
        return ()
    x2, r2 = pair.x2, pair.r2
    x, y2 = _crossing(x2, r2)
    y_tol = EPS * max(1.0, x2, r2) ** 2
    if y2 < -y_tol:
        return ()
    if y2 <= y_tol:
        return (pair.to_world((x, 0.0)),)
    y = math.sqrt(y2)
    return (pair.to_world((x, y)), pair.to_world((x, -y)))


def _crossing_in_third(pair: CirclePair, third: Disc) -> bool:
    """Some crossing point of the pair's circles lies in ``third``.

    A crossing point is ``(X, ±Y)``, so its squared distance to ``c3`` minus
    ``r3**2`` is ``lin ∓ 2*y3*Y`` with ``lin`` free of ``Y``.  The better sign
    passes when ``lin <= |2*y3|*Y``, squared out below.
    """
    x2, r2 = pair.x2, pair.r2
    x3, y3 = pair.to_local((third.cx, third.cy))
    r3 = third.r / pair.c1.r
    tol = EPS * max(1.0, x2, r2, abs(x3), abs(y3), r3) ** 2
    x, y2 = _crossing(x2, r2)
    if y2 < -tol:
        return False
    y2 = max(y2, 0.0)
    lin = (x - x3) ** 2 + y2 + y3 * y3 - r3 * r3 - tol
    a = 2.0 * y3
    return lin <= 0.0 or lin * lin <= a * a * y2


def three_discs_intersect(d1: Disc, d2: Disc, d3: Disc) -> bool:
    discs = (d1, d2, d3)
    tol = _sq_tol(*discs)
    for i, j, k in ((0, 1, 2), (0, 2, 1), (1, 2, 0)):
        if discs[i] == discs[j]:
            return _overlap(discs[i], discs[k], tol)
    for i, d in enumerate(discs):
        others = [e for j, e in enumerate(discs) if j != i]
        if all(_in_disc((d.cx, d.cy), e, tol) for e in others):
            return True
    if any(d.r == 0.0 for d in discs):
        # a point disc meets the others only at its center, checked above
        return False
    for i, j, k in ((0, 1, 2), (0, 2, 1), (1, 2, 0)):
        pair = CirclePair(discs[i], discs[j])
        if pair.dist_sq == 0.0:
            continue
        if _crossing_in_third(pair, discs[k]):
            return True
    return False


def four_discs_intersect(d1: Disc, d2: Disc, d3: Disc, d4: Disc) -> bool:
    """Plane Helly: four convex sets meet iff every three of them do."""
    return all(three_discs_intersect(*t) for t in itertools.combinations((d1, d2, d3, d4), 3))


def alibi_at_time(b1: Bead, b2: Bead, t0: float) -> bool:
    """Whether the two beads share a point at time ``t0``."""
    s1, s2 = time_slice(b1, t0), time_slice(b2, t0)
    if s1 is None or s2 is None:
        return False
    return four_discs_intersect(*s1, *s2)
