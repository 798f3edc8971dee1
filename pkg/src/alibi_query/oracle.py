"""Brute-force reference answers, independent of the analytic predicates.

Beads: at a fixed time each bead is the intersection of two discs, so two
beads meet at ``t`` exactly when four discs share a point.  The oracle
computes, per sampled time, the best achievable slack

    g(t) = max over p of min over discs (r_i(t) - |p - c_i|)

exactly by enumerating the points where the max-min can be attained (disc
centers, balance points between two discs, and equal-slack points of three
discs).  ``g`` is concave on the common time span, so the sampled maximum is
then refined by repeated zooming around the best slice.

Discs: branch and bound on a square grid, using that the slack function is
1-Lipschitz.  A "true" answer is certified by a sample with nonnegative
slack, a "false" answer by every cell's upper bound being negative.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .core import Bead, Disc, TimeSpacePoint

SAMPLE_CAP = 1 << 20
_PAIRS = list(itertools.combinations(range(4), 2))
_TRIPLES = list(itertools.combinations(range(4), 3))


@dataclass(frozen=True, slots=True)
class OracleVerdict:
    """``margin`` is the best slack found (distance units); a tiny ``|margin|``
    means the configuration is too close to tangency for sampling to settle."""

    intersects: bool
    margin: float
    samples_used: int
    witness: Optional[TimeSpacePoint] = None

    def reliable(self, eps: float = 1e-6) -> bool:
        return abs(self.margin) >= eps


class _SliceSolver:
    """Exact max-min slack for the four slice discs, vectorized over times.

    Centers never move with time, so everything that depends on them alone is
    prepared once.
    """

    def __init__(self, b1: Bead, b2: Bead) -> None:
        self.b1, self.b2 = b1, b2
        self.centers = np.array(
            [[p.x, p.y] for p in (b1.origin, b1.destination, b2.origin, b2.destination)], dtype=float
        )
        c = self.centers
        self.pairs = []
        for i, j in _PAIRS:
            delta = c[j] - c[i]
            d = float(np.hypot(*delta))
            if d > 0.0:
                self.pairs.append((i, j, d, delta / d))
        self.triples = []
        for i, j, k in _TRIPLES:
            # |p - c_m| = r_m + u for m in {i, j, k}; differences are linear in (p, u)
            m = 2.0 * np.array([c[j] - c[i], c[k] - c[i]])
            if abs(np.linalg.det(m)) < 1e-12 * max(1.0, float(np.abs(m).max()) ** 2):
                continue
            sq = np.sum(c * c, axis=1)
            self.triples.append((i, j, k, np.linalg.inv(m).T, sq[j] - sq[i], sq[k] - sq[i]))

    def radii(self, ts: np.ndarray) -> np.ndarray:
        b1, b2 = self.b1, self.b2
        return np.stack(
            [
                b1.vmax * (ts - b1.origin.t),
                b1.vmax * (b1.destination.t - ts),
                b2.vmax * (ts - b2.origin.t),
                b2.vmax * (b2.destination.t - ts),
            ],
            axis=-1,
        )

    def candidates(self, radii: np.ndarray) -> np.ndarray:
        """Points (T, K, 2) among which the max-min slack is attained."""
        c = self.centers
        cands = [np.broadcast_to(c[None, :, :], (radii.shape[0], 4, 2))]
        for i, j, d, unit in self.pairs:
            s = np.clip(0.5 * (d + radii[:, i] - radii[:, j]), 0.0, d)
            cands.append((c[i] + s[:, None] * unit)[:, None, :])
        for i, j, k, minv_t, ej, ek in self.triples:
            ri = radii[:, i]
            e = np.stack([ej - radii[:, j] ** 2 + ri**2, ek - radii[:, k] ** 2 + ri**2], axis=-1)
            f = np.stack([2.0 * (ri - radii[:, j]), 2.0 * (ri - radii[:, k])], axis=-1)
            a = e @ minv_t - c[i]
            b = f @ minv_t
            qa = np.sum(b * b, axis=-1) - 1.0
            qb = 2.0 * (np.sum(a * b, axis=-1) - ri)
            qc = np.sum(a * a, axis=-1) - ri**2
            with np.errstate(divide="ignore", invalid="ignore"):
                root = np.sqrt(np.maximum(qb * qb - 4.0 * qa * qc, 0.0))
                linear = np.abs(qa) < 1e-12
                for sign in (1.0, -1.0):
                    u = np.where(linear, -qc / qb, (-qb + sign * root) / (2.0 * qa))
                    cands.append((c[i] + a + b * u[:, None])[:, None, :])
        pts = np.concatenate(cands, axis=1)
        return np.where(np.isfinite(pts), pts, c[0])

    def best(self, ts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        radii = self.radii(ts)
        pts = self.candidates(radii)
        diff = pts[:, :, None, :] - self.centers[None, None, :, :]
        dist = np.sqrt(np.sum(diff * diff, axis=-1))
        slack = np.min(radii[:, None, :] - dist, axis=-1)
        k = np.argmax(slack, axis=1)
        rows = np.arange(len(ts))
        return slack[rows, k], pts[rows, k]


def oracle_beads_intersect(b1: Bead, b2: Bead, slices: int = 2048, zoom_rounds: int = 30) -> OracleVerdict:
    if slices < 2:
        raise ValueError("slices must be >= 2")
    lo = max(b1.origin.t, b2.origin.t)
    hi = min(b1.destination.t, b2.destination.t)
    if lo > hi:
        return OracleVerdict(False, -(lo - hi), 0)
    solver = _SliceSolver(b1, b2)
    ts = np.linspace(lo, hi, slices)
    g, p = solver.best(ts)
    used = slices
    k = int(np.argmax(g))
    best_t, best_g, best_p = ts[k], g[k], p[k]
    width = (hi - lo) / (slices - 1)
    floor = 1e-13 * max(1.0, abs(lo), abs(hi))
    for _ in range(zoom_rounds):
        if width <= floor:
            break
        a, b = max(lo, best_t - width), min(hi, best_t + width)
        ts = np.linspace(a, b, 17)
        g, p = solver.best(ts)
        used += len(ts)
        k = int(np.argmax(g))
        if g[k] > best_g:
            best_t, best_g, best_p = ts[k], g[k], p[k]
        width = (b - a) / 16.0
    witness = TimeSpacePoint(float(best_t), float(best_p[0]), float(best_p[1]))
    return OracleVerdict(bool(best_g >= 0.0), float(best_g), used, witness)


def oracle_discs_intersect(discs: Sequence[Disc], grid: int = 512) -> OracleVerdict:
    if not 1 <= len(discs) <= 4:
        raise ValueError("between 1 and 4 discs are supported")
    if grid < 16:
        raise ValueError("grid must be >= 16")
    centers = np.array([[d.cx, d.cy] for d in discs], dtype=float)
    radii = np.array([d.r for d in discs], dtype=float)

    def slack(pts: np.ndarray) -> np.ndarray:
        dist = np.linalg.norm(pts[:, None, :] - centers[None, :, :], axis=-1)
        return np.min(radii[None, :] - dist, axis=-1)

    tight = discs[int(np.argmin(radii))]
    if tight.r == 0.0:
        s = float(slack(np.array([[tight.cx, tight.cy]]))[0])
        return OracleVerdict(s >= 0.0, s, 1, TimeSpacePoint(0.0, tight.cx, tight.cy))

    h = 2.0 * tight.r / grid
    offs = (np.arange(grid) + 0.5) * h - tight.r
    gx, gy = np.meshgrid(tight.cx + offs, tight.cy + offs, indexing="ij")
    cells = np.column_stack([gx.ravel(), gy.ravel()])
    used = 0
    best_val, best_pt = -np.inf, cells[0]
    bound = -np.inf  # largest upper bound over discarded cells
    while True:
        vals = slack(cells)
        used += len(cells)
        k = int(np.argmax(vals))
        if vals[k] > best_val:
            best_val, best_pt = float(vals[k]), cells[k]
        witness = TimeSpacePoint(0.0, float(best_pt[0]), float(best_pt[1]))
        if best_val >= 0.0:
            return OracleVerdict(True, best_val, used, witness)
        upper = vals + h * np.sqrt(0.5)
        keep = upper >= 0.0
        if not keep.all():
            bound = max(bound, float(upper[~keep].max()))
        if not keep.any():
            return OracleVerdict(False, bound, used, witness)
        cells = cells[keep]
        if used + 4 * len(cells) > SAMPLE_CAP:
            # too close to tangency to certify either way
            return OracleVerdict(False, 0.0, used, witness)
        h *= 0.5
        q = 0.5 * h
        cells = np.concatenate([cells + np.array([sx * q, sy * q]) for sx in (-1, 1) for sy in (-1, 1)])
