"""Real roots of polynomials of degree at most four.

Closed forms (stable quadratic formula, Cardano, Ferrari) give first estimates,
which are then polished by Newton iteration on the original coefficients.
Estimates are kept or dropped on their residual, not on the size of their
imaginary part, so a double root that rounding has split into a close complex
pair is still reported.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

DEGREE_CUTOFF = 1e-12
# a trailing coefficient this small moves roots by at most its fourth root
TRAILING_CUTOFF = 1e-32
# Newton-polygon scales closer than this (natural log) are solved together
_SCALE_SPAN = math.log(1e4)
_MERGE = 1e-9
_CLUSTER = 1e-3
# residual indistinguishable from coefficient rounding
_NOISE = 1e-14


@dataclass(frozen=True, slots=True)
class Poly4:
    """``a*x**4 + b*x**3 + c*x**2 + d*x + e``."""

    a: float
    b: float
    c: float
    d: float
    e: float

    def __post_init__(self) -> None:
        if not all(math.isfinite(v) for v in self.coefficients()):
            raise ValueError("polynomial coefficients must be finite")

    def coefficients(self) -> tuple[float, float, float, float, float]:
        return (self.a, self.b, self.c, self.d, self.e)

    def __call__(self, x: float) -> float:
        return (((self.a * x + self.b) * x + self.c) * x + self.d) * x + self.e

    def degree(self) -> int:
        return len(_trim(self.coefficients())) - 1

    def scale(self, x: float) -> float:
        ax = abs(x)
        return (((abs(self.a) * ax + abs(self.b)) * ax + abs(self.c)) * ax + abs(self.d)) * ax + abs(self.e)


def _trim(coeffs: tuple[float, ...]) -> tuple[float, ...]:
    """Drop leading coefficients that are negligible next to the largest one."""
    big = max(abs(c) for c in coeffs)
    i = 0
    while i < len(coeffs) - 1 and abs(coeffs[i]) <= DEGREE_CUTOFF * big:
        i += 1
    return coeffs[i:]


def _quadratic(b: float, c: float) -> list[complex]:
    """Roots of monic ``x**2 + b*x + c``."""
    disc = b * b - 4.0 * c
    if disc >= 0:
        q = -0.5 * (b + math.copysign(math.sqrt(disc), b))
        if q == 0.0:
            return [0.0, 0.0]
        return [q, c / q]
    s = 0.5 * math.sqrt(-disc)
    return [complex(-0.5 * b, s), complex(-0.5 * b, -s)]


def _cubic(b: float, c: float, d: float) -> list[complex]:
    """Roots of monic ``x**3 + b*x**2 + c*x + d``."""
    shift = b / 3.0
    p = c - b * shift
    q = d - c * shift + 2.0 * shift**3
    if p == 0.0 and q == 0.0:
        return [-shift] * 3
    disc = (q / 2.0) ** 2 + (p / 3.0) ** 3
    if disc < 0:
        # three distinct real roots: trigonometric form
        m = 2.0 * math.sqrt(-p / 3.0)
        arg = max(-1.0, min(1.0, 3.0 * q / (p * m)))
        theta = math.acos(arg) / 3.0
        return [m * math.cos(theta - 2.0 * math.pi * k / 3.0) - shift for k in range(3)]
    u = -q / 2.0 + math.copysign(math.sqrt(disc), -q)
    u = math.copysign(abs(u) ** (1.0 / 3.0), u)
    w = -p / (3.0 * u) if u != 0.0 else 0.0
    real = u + w - shift
    rot = complex(-0.5, math.sqrt(3.0) / 2.0)
    return [real, u * rot + w * rot.conjugate() - shift, u * rot.conjugate() + w * rot - shift]


def _quartic(b: float, c: float, d: float, e: float) -> list[complex]:
    """Roots of monic ``x**4 + b*x**3 + c*x**2 + d*x + e`` by Ferrari's method."""
    shift = b / 4.0
    p = c - 6.0 * shift**2
    q = d - 2.0 * c * shift + 8.0 * shift**3
    r = e - d * shift + c * shift**2 - 3.0 * shift**4
    if abs(q) <= 1e-14 * (abs(p) ** 1.5 + abs(r) ** 0.75 + 1e-300):
        roots: list[complex] = []
        for z in _quadratic(p, r):
            s = cmath.sqrt(z)
            roots.extend([s, -s])
        return [z - shift for z in roots]
    # resolvent: 8 m^3 + 8 p m^2 + (2 p^2 - 8 r) m - q^2 = 0 has a positive root;
    # every positive root factors the quartic, but a near-double one does so
    # poorly, so all are tried and the best factorization kept
    cands = sorted({z.real for z in map(complex, _cubic(p, p * p / 4.0 - r, -q * q / 8.0)) if z.real > 0.0})
    best: list[complex] = []
    best_err = math.inf
    for m in cands or [abs(q) ** (2.0 / 3.0)]:
        m = _polish_resolvent(m, p, r, q)
        s = math.sqrt(2.0 * m)
        roots = _quadratic(s, p / 2.0 + m - q / (2.0 * s)) + _quadratic(-s, p / 2.0 + m + q / (2.0 * s))
        err = max(_depressed_residual(z, p, q, r) for z in roots)
        if err < best_err:
            best, best_err = roots, err
    return [z - shift for z in best]


def _depressed_residual(z: complex, p: float, q: float, r: float) -> float:
    num = abs(((z * z + p) * z + q) * z + r)
    a = abs(z)
    den = ((a * a + abs(p)) * a + abs(q)) * a + abs(r)
    return num / den if den > 0.0 else 0.0


def _polish_resolvent(m: float, p: float, r: float, q: float) -> float:
    def f(x: float) -> float:
        return ((x + p) * x + (p * p / 4.0 - r)) * x - q * q / 8.0

    fm = f(m)
    for _ in range(8):
        df = (3.0 * m + 2.0 * p) * m + (p * p / 4.0 - r)
        if df == 0.0 or fm == 0.0:
            break
        nm = m - fm / df
        if nm <= 0.0 or abs(f(nm)) >= abs(fm):
            break
        m, fm = nm, f(nm)
    return m


def _newton(coeffs: tuple[float, ...], x: float, iters: int = 64) -> float:
    def evaluate(z: float) -> tuple[float, float]:
        f, df = 0.0, 0.0
        for c in coeffs:
            df = df * z + f
            f = f * z + c
        return f, df

    f, df = evaluate(x)
    for _ in range(iters):
        if f == 0.0 or df == 0.0:
            break
        nx = x - f / df
        if x != 0.0 and abs(nx - x) > 0.5 * abs(x):
            # estimates are relatively accurate; a long jump means another root took over
            break
        nf, ndf = evaluate(nx)
        if abs(nf) >= abs(f):
            break
        x, f, df = nx, nf, ndf
    return x


def real_roots(p: Poly4, tol: float = 1e-9) -> list[float]:
    """Ascending, deduplicated real roots of ``p``.

    Each returned root ``r`` satisfies ``|p(r)| <= tol * p.scale(r)``.  Raises
    ValueError for the zero polynomial.
    """
    coeffs = p.coefficients()
    if all(c == 0.0 for c in coeffs):
        raise ValueError("polynomial is identically zero")
    full = _trim(coeffs)
    found: list[float] = []
    for s in _root_scales(full):
        for y in _solve_balanced(_rescale(full, s)):
            found.append(_newton(full, s * y))
    if full[-1] == 0.0:
        found.append(0.0)
    return _finish(p, full, found, tol)


def _root_scales(coeffs: tuple[float, ...]) -> list[float]:
    """Typical root magnitudes, one per edge of the Newton polygon, merged when
    they lie within a few orders of magnitude of each other."""
    n = len(coeffs) - 1
    pts = [(n - i, math.log(abs(c))) for i, c in enumerate(coeffs) if c != 0.0]
    pts.sort()
    hull: list[tuple[int, float]] = []
    for pt in pts:
        # upper hull of (power, log|coefficient|)
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (pt[0] - x1) <= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    logs = sorted(-(y2 - y1) / (x2 - x1) for (x1, y1), (x2, y2) in zip(hull, hull[1:]))
    groups: list[list[float]] = []
    for v in logs:
        if groups and v - groups[-1][0] <= _SCALE_SPAN:
            groups[-1].append(v)
        else:
            groups.append([v])
    return [math.exp(sum(g) / len(g)) for g in groups]


def _rescale(coeffs: tuple[float, ...], s: float) -> tuple[float, ...]:
    """Coefficients of ``p(s*y)``, normalized to unit maximum without overflow."""
    n = len(coeffs) - 1
    ls = math.log(s)
    logs = [math.log(abs(c)) + (n - i) * ls if c != 0.0 else -math.inf for i, c in enumerate(coeffs)]
    top = max(logs)
    return tuple(math.copysign(math.exp(lg - top), c) if c != 0.0 else 0.0 for lg, c in zip(logs, coeffs))


def _solve_balanced(coeffs: tuple[float, ...]) -> list[float]:
    """Real-part estimates of the roots of a polynomial whose roots of interest
    have magnitude near 1; coefficients negligible at that scale are dropped."""
    coeffs = _trim(coeffs)
    big = max(abs(c) for c in coeffs)
    while len(coeffs) > 1 and abs(coeffs[-1]) <= TRAILING_CUTOFF * big:
        coeffs = coeffs[:-1]
    deg = len(coeffs) - 1
    if deg == 0:
        return []
    mon = [c / coeffs[0] for c in coeffs[1:]]
    if deg == 1:
        estimates: list[complex] = [-mon[0]]
    elif deg == 2:
        estimates = _quadratic(*mon)
    elif deg == 3:
        estimates = _cubic(*mon)
    else:
        estimates = _quartic(*mon)
    return [_newton(coeffs, complex(z).real) for z in estimates]


def _finish(p: Poly4, full: tuple[float, ...], candidates: list[float], tol: float) -> list[float]:
    def ok(x: float) -> bool:
        return abs(p(x)) <= tol * p.scale(x)

    found = sorted(x for x in candidates if ok(x))
    kept: list[float] = []
    for group in _clusters(found):
        snapped = _multiple_root(p, full, group)
        if snapped is None:
            kept.extend(group)
            continue
        z, k, reach = snapped
        kept.append(z)
        # the cluster may also hold simple roots next to the multiple one
        rest = _deflate(full, z, k)
        if len(rest) > 1:
            for y in _solve_balanced(rest):
                x = _newton(full, y)
                if abs(x - z) <= reach and ok(x):
                    kept.append(x)
    out: list[float] = []
    for x in sorted(kept):
        if out and abs(x - out[-1]) <= _MERGE * max(1.0, abs(x)):
            continue
        out.append(x)
    return out


def _deflate(coeffs: tuple[float, ...], z: float, k: int) -> tuple[float, ...]:
    """Quotient of ``coeffs`` by ``(x - z)**k``, remainder dropped."""
    for _ in range(k):
        q = [coeffs[0]]
        for c in coeffs[1:-1]:
            q.append(c + q[-1] * z)
        coeffs = tuple(q)
    return coeffs


def _clusters(xs: list[float]) -> list[list[float]]:
    groups: list[list[float]] = []
    for x in xs:
        if groups and x - groups[-1][-1] <= _CLUSTER * max(abs(x), abs(groups[-1][-1])):
            groups[-1].append(x)
        else:
            groups.append([x])
    return groups


def _derivative(coeffs: tuple[float, ...]) -> tuple[float, ...]:
    n = len(coeffs) - 1
    return tuple(c * (n - i) for i, c in enumerate(coeffs[:-1]))


def _multiple_root(p: Poly4, coeffs: tuple[float, ...], group: list[float]) -> tuple[float, int, float] | None:
    """A multiple root that rounding split into ``group`` (or that the closed
    form reported fewer times than its multiplicity).

    A root of multiplicity m + 1 is a simple root of the m-th derivative, which
    pins it down far better than the split estimates.  Returns the root, its
    multiplicity and the search radius, or None when no derivative yields a
    point whose residual is at rounding level.
    """
    center = sum(group) / len(group)
    reach = max(group[-1] - group[0], _CLUSTER * abs(center))
    derivs = [coeffs]
    while len(derivs[-1]) > 2:
        derivs.append(_derivative(derivs[-1]))
    for m in range(len(derivs) - 1, 0, -1):
        z = _newton(derivs[m], center)
        if abs(z - center) <= reach and abs(p(z)) <= _NOISE * p.scale(z):
            return z, m + 1, reach
    return None
