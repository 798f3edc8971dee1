"""Hypothesis strategies and small helpers shared by the test modules."""

from __future__ import annotations

import math

from hypothesis import assume
from hypothesis import strategies as st

from alibi_query.core import Bead, Disc, TimeSpacePoint

coord = st.floats(-5.0, 5.0, allow_nan=False, allow_infinity=False)
speed = st.floats(0.05, 3.0, allow_nan=False, allow_infinity=False)


@st.composite
def nonempty_beads(draw, min_duration: float = 0.05) -> Bead:
    t1 = draw(coord)
    dt = draw(st.floats(min_duration, 5.0))
    x1, y1 = draw(coord), draw(coord)
    v = draw(speed)
    # destination anywhere in the reachable disc
    r = v * dt * draw(st.floats(0.0, 1.0))
    ang = draw(st.floats(0.0, 2.0 * math.pi))
    return Bead.of(t1, x1, y1, t1 + dt, x1 + r * math.cos(ang), y1 + r * math.sin(ang), v)


@st.composite
def discs(draw, rmin: float = 0.01) -> Disc:
    return Disc(draw(coord), draw(coord), draw(st.floats(rmin, 4.0)))


def point_in_both(b1: Bead, b2: Bead, p: TimeSpacePoint, slack: float = 1e-7) -> bool:
    """Direct check of the bead inequalities with an absolute slack."""
    for b in (b1, b2):
        o, d, v = b.origin, b.destination, b.vmax
        if not o.t - slack <= p.t <= d.t + slack:
            return False
        if math.hypot(p.x - o.x, p.y - o.y) > v * (p.t - o.t) + slack:
            return False
        if math.hypot(p.x - d.x, p.y - d.y) > v * (d.t - p.t) + slack:
            return False
    return True


def within_contract(b1: Bead, b2: Bead, p: TimeSpacePoint, eps: float = 1e-9) -> bool:
    """Bead membership under the library's tolerance convention: squared
    distances may exceed by ``eps * L**2`` and times by ``eps * max|t|``, with
    ``L`` the largest coordinate or speed-scaled time of the pair."""
    apexes = [(b, q) for b in (b1, b2) for q in (b.origin, b.destination)]
    length = max(max(abs(q.x), abs(q.y), b.vmax * abs(q.t)) for b, q in apexes)
    sq, tt = eps * length**2, eps * max(abs(q.t) for _, q in apexes)
    for b in (b1, b2):
        o, d, v = b.origin, b.destination, b.vmax
        if not o.t - tt <= p.t <= d.t + tt:
            return False
        for q, dt in ((o, p.t - o.t), (d, d.t - p.t)):
            if (p.x - q.x) ** 2 + (p.y - q.y) ** 2 > (v * max(dt, 0.0)) ** 2 + sq:
                return False
    return True


def assume_not_tangent(margin: float, eps: float = 1e-6) -> None:
    assume(abs(margin) >= eps)


def sample_rows(label: str, n: int, y: float, rng, t_step: float = 1.0, v: float = 1.0) -> list[tuple]:
    """``n`` samples of a walk along the line ``y`` with feasible steps."""
    rows, x = [], 0.0
    for i in range(n):
        rows.append((label, i * t_step, x, y, v))
        x += float(rng.uniform(0.0, 0.9)) * v * t_step
    return rows


def write_csv(path, rows) -> None:
    lines = ["label,t,x,y,v"] + [",".join(str(c) for c in r) for r in rows]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
