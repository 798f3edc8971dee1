"""Domain types for moving-object samples, beads, discs and necklaces.

All values are immutable.  Set memberships are closed: a point on a cone
surface or a disc border counts as inside.  Comparisons on squared-distance
expressions carry an absolute slack of ``EPS * L**2`` where ``L`` is the
magnitude of the coordinates involved, so decisions survive the uniform
rescalings used by the predicates.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Hashable, Iterable, NamedTuple, Optional

EPS = 1e-9


class Side(str, enum.Enum):
    BOTTOM = "bottom"
    TOP = "top"


class Case(str, enum.Enum):
    I = "I"
    II = "II"
    III = "III"
    NONE = "none"


@dataclass(frozen=True, slots=True)
class TimeSpacePoint:
    t: float
    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.t) and math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite coordinate in {self!r}")

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.t, self.x, self.y)


@dataclass(frozen=True, slots=True)
class Bead:
    """Space-time prism between two time-stamped locations under a speed bound."""

    origin: TimeSpacePoint
    destination: TimeSpacePoint
    vmax: float

    def __post_init__(self) -> None:
        if self.origin.t > self.destination.t:
            raise ValueError("bead origin must not be later than its destination")
        if not math.isfinite(self.vmax) or self.vmax < 0:
            raise ValueError(f"vmax must be finite and >= 0, got {self.vmax}")

    @classmethod
    def of(cls, tp: float, xp: float, yp: float, tq: float, xq: float, yq: float, v: float) -> Bead:
        return cls(TimeSpacePoint(tp, xp, yp), TimeSpacePoint(tq, xq, yq), v)

    def as_tuple(self) -> tuple[float, ...]:
        return (*self.origin.as_tuple(), *self.destination.as_tuple(), self.vmax)

    @property
    def duration(self) -> float:
        return self.destination.t - self.origin.t

    @property
    def is_point(self) -> bool:
        return self.origin.t == self.destination.t

    def apexes(self) -> tuple[TimeSpacePoint, TimeSpacePoint]:
        return (self.origin, self.destination)

    def bottom_cone(self) -> Cone:
        return Cone(self.origin, self.vmax, Side.BOTTOM)

    def top_cone(self) -> Cone:
        return Cone(self.destination, self.vmax, Side.TOP)


@dataclass(frozen=True, slots=True)
class Cone:
    apex: TimeSpacePoint
    vmax: float
    orientation: Side

    def __post_init__(self) -> None:
        if not math.isfinite(self.vmax) or self.vmax < 0:
            raise ValueError(f"vmax must be finite and >= 0, got {self.vmax}")


@dataclass(frozen=True, slots=True)
class Disc:
    cx: float
    cy: float
    r: float

    def __post_init__(self) -> None:
        if not self.r >= 0:
            raise ValueError(f"disc radius must be >= 0, got {self.r}")


@dataclass(frozen=True, slots=True)
class Sample:
    label: Hashable
    t: float
    x: float
    y: float
    v: float

    def __post_init__(self) -> None:
        for name in ("t", "x", "y", "v"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"sample field {name} is not finite")
        if self.v < 0:
            raise ValueError(f"negative speed limit {self.v} for label {self.label!r}")


class DatabaseError(ValueError):
    pass


@dataclass(frozen=True)
class TrajectoryDatabase:
    """Samples grouped per label, each group strictly increasing in time."""

    groups: dict[Hashable, tuple[Sample, ...]]

    @classmethod
    def from_samples(cls, samples: Iterable[Sample]) -> TrajectoryDatabase:
        by_label: dict[Hashable, list[Sample]] = {}
        for s in samples:
            by_label.setdefault(s.label, []).append(s)
        groups = {}
        for label, rows in by_label.items():
            rows.sort(key=lambda s: s.t)
            for prev, cur in zip(rows, rows[1:]):
                if prev.t == cur.t:
                    raise DatabaseError(f"duplicate sample for label {label!r} at t={cur.t}")
            groups[label] = tuple(rows)
        return cls(groups)

    @property
    def labels(self) -> list[Hashable]:
        return list(self.groups)

    def samples(self, label: Hashable) -> tuple[Sample, ...]:
        try:
            return self.groups[label]
        except KeyError:
            raise DatabaseError(f"unknown label {label!r}") from None

    def __len__(self) -> int:
        return sum(len(g) for g in self.groups.values())


@dataclass(frozen=True)
class Necklace:
    label: Hashable
    beads: tuple[Bead, ...]

    def __len__(self) -> int:
        return len(self.beads)

    def __iter__(self):
        return iter(self.beads)

    def __getitem__(self, i: int) -> Bead:
        return self.beads[i]

    @property
    def start(self) -> float:
        return self.beads[0].origin.t

    @property
    def end(self) -> float:
        return self.beads[-1].destination.t


@dataclass(frozen=True, slots=True)
class AlibiVerdict:
    intersects: bool
    fired_case: Case
    witness: Optional[TimeSpacePoint] = None

    def __post_init__(self) -> None:
        if self.intersects != (self.fired_case is not Case.NONE):
            raise ValueError("intersects must be true exactly when a case fired")


class Tolerance(NamedTuple):
    """Absolute slack for squared-distance (``sq``) and time (``t``) comparisons."""

    sq: float
    t: float


def tolerance_for(*beads: Bead, points: Iterable[TimeSpacePoint] = ()) -> Tolerance:
    length = 0.0
    span_t = 0.0
    for b in beads:
        for p in b.apexes():
            length = max(length, abs(p.x), abs(p.y), b.vmax * abs(p.t))
            span_t = max(span_t, abs(p.t))
    for p in points:
        length = max(length, abs(p.x), abs(p.y))
        span_t = max(span_t, abs(p.t))
    return Tolerance(EPS * length * length, EPS * span_t)


def bead_nonempty(b: Bead, tol: Optional[Tolerance] = None) -> bool:
    tol = tol or tolerance_for(b)
    o, d = b.origin, b.destination
    dist2 = (d.x - o.x) ** 2 + (d.y - o.y) ** 2
    return dist2 <= (d.t - o.t) ** 2 * b.vmax**2 + tol.sq


def bead_contains_point(b: Bead, p: TimeSpacePoint, tol: Optional[Tolerance] = None) -> bool:
    tol = tol or tolerance_for(b, points=(p,))
    o, d, v2 = b.origin, b.destination, b.vmax**2
    if not (o.t - tol.t <= p.t <= d.t + tol.t):
        return False
    if (p.x - o.x) ** 2 + (p.y - o.y) ** 2 > (p.t - o.t) ** 2 * v2 + tol.sq:
        return False
    return (p.x - d.x) ** 2 + (p.y - d.y) ** 2 <= (d.t - p.t) ** 2 * v2 + tol.sq


def time_slice(b: Bead, t0: float) -> Optional[tuple[Disc, Disc]]:
    """Bottom and top discs of the bead at time ``t0``, or None outside its time domain."""
    o, d = b.origin, b.destination
    if not o.t <= t0 <= d.t:
        return None
    return (Disc(o.x, o.y, b.vmax * (t0 - o.t)), Disc(d.x, d.y, b.vmax * (d.t - t0)))


def build_necklace(db: TrajectoryDatabase, label: Hashable) -> Necklace:
    rows = db.samples(label)
    if len(rows) < 2:
        raise DatabaseError(f"label {label!r} has {len(rows)} sample(s); a necklace needs at least 2")
    beads = tuple(
        Bead.of(a.t, a.x, a.y, b.t, b.x, b.y, a.v) for a, b in zip(rows, rows[1:])
    )
    return Necklace(label, beads)
