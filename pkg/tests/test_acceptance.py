"""End-to-end acceptance checks, one test per criterion.

Each test prints a single ``criterion N: PASS|FAIL ...`` line (visible even
under output capture) before asserting.  Run alone with
``pytest tests/test_acceptance.py -v``.
"""

from __future__ import annotations

import math
import statistics
import time
from dataclasses import dataclass

import numpy as np
import pytest

from alibi_query.core import Bead, Case, Cone, Disc, Sample, Side, TimeSpacePoint, TrajectoryDatabase
from alibi_query.core import bead_contains_point
from alibi_query.discs import four_discs_intersect, three_discs_intersect
from alibi_query.engine import TABLE_PAIRS, random_nonempty_bead, run_alibi
from alibi_query.geometry import initial_contact, on_bottom_cone
from alibi_query.oracle import OracleVerdict, oracle_beads_intersect, oracle_discs_intersect
from alibi_query.polyroots import Poly4, real_roots
from alibi_query.predicate import beads_intersect, case_i, case_ii, case_iii
from strategies import within_contract

MARGIN = 1e-6
FIG_1 = Bead.of(0, 0, 0, 2, 0, 2, 1.9)
FIG_2 = Bead.of(0, 3, 0, 2, 3, 2, 1.9)


@pytest.fixture
def report(capsys):
    def emit(n: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'} {detail}")
        assert ok, detail

    return emit


def median_ns(fn, repeat: int = 51) -> float:
    samples = []
    for _ in range(repeat):
        start = time.perf_counter_ns()
        fn()
        samples.append(time.perf_counter_ns() - start)
    return statistics.median(samples)


def test_criterion_1_counterexample(report):
    v = beads_intersect(FIG_1, FIG_2)
    contacts = [
        initial_contact(FIG_1.bottom_cone(), FIG_2.bottom_cone()),
        initial_contact(FIG_1.top_cone(), FIG_2.top_cone()),
    ]
    contact_inside = [bead_contains_point(FIG_1, p) and bead_contains_point(FIG_2, p) for p in contacts]
    elapsed = median_ns(lambda: beads_intersect(FIG_1, FIG_2))
    ok = (
        v.intersects
        and v.fired_case is Case.II
        and case_i(FIG_1, FIG_2) is None
        and not any(contact_inside)
        and elapsed <= 1e6
    )
    report(1, ok, f"case={v.fired_case.value} contacts_inside={contact_inside} median={elapsed / 1e3:.1f}us")


def test_criterion_2_initial_contact(report):
    c1, c2 = Cone(TimeSpacePoint(0, 0, 0), 1, Side.BOTTOM), Cone(TimeSpacePoint(0, 2, 0), 1, Side.BOTTOM)
    p = initial_contact(c1, c2)
    on_both = on_bottom_cone(c1, p) and on_bottom_cone(c2, p)
    # between the apex projections (0,0) and (2,0)
    cross = p.x * 0 - p.y * 2
    on_segment = abs(cross) <= 1e-9 and -1e-9 <= p.x <= 2 + 1e-9
    radius_sum = c1.vmax * (p.t - c1.apex.t) + c2.vmax * (p.t - c2.apex.t)
    ok = abs(p.t - 1) <= 1e-9 and on_both and on_segment and abs(radius_sum - 2.0) <= 1e-9
    report(2, ok, f"point={p.as_tuple()} on_cones={on_both} on_segment={on_segment} radius_sum={radius_sum}")


@dataclass(frozen=True)
class PairResult:
    b1: Bead
    b2: Bead
    intersects: bool
    oracle: OracleVerdict


@pytest.fixture(scope="module")
def random_pairs() -> list[PairResult]:
    rng = np.random.default_rng(20240601)
    out = []
    for _ in range(10_000):
        b1, b2 = random_nonempty_bead(rng), random_nonempty_bead(rng)
        out.append(PairResult(b1, b2, beads_intersect(b1, b2).intersects, oracle_beads_intersect(b1, b2, 2048)))
    return out


def test_criterion_3_bead_oracle_agreement(report, random_pairs):
    decided = [r for r in random_pairs if abs(r.oracle.margin) >= MARGIN]
    excluded = len(random_pairs) - len(decided)
    wrong = [r for r in decided if r.intersects != r.oracle.intersects]
    positives = sum(r.oracle.intersects for r in decided)
    ok = not wrong and excluded < 0.01 * len(random_pairs)
    report(3, ok, f"pairs={len(random_pairs)} disagree={len(wrong)} excluded={excluded} oracle_true={positives}")


def test_criterion_4_table_vectors(report):
    mismatches, times = [], []
    for name, b1, b2 in TABLE_PAIRS:
        orc = oracle_beads_intersect(b1, b2, 2048)
        if beads_intersect(b1, b2).intersects != orc.intersects or not orc.reliable(MARGIN):
            mismatches.append(name)
        times.append(median_ns(lambda: beads_intersect(b1, b2), repeat=21))
    med = statistics.median(times)
    ok = len(TABLE_PAIRS) == 12 and not mismatches and med <= 1e6
    report(4, ok, f"pairs={len(TABLE_PAIRS)} mismatched={mismatches} median={med / 1e3:.1f}us")


def _tracks(gap: float, seed: int) -> TrajectoryDatabase:
    rng = np.random.default_rng(seed)
    samples = []
    for label, y0 in (("a", 0.0), ("b", gap)):
        t, x, y = 0.0, 0.0, y0
        for _ in range(101):
            samples.append(Sample(label, t, x, y, 1.0))
            dt = float(rng.uniform(0.5, 1.5))
            step = float(rng.uniform(0.0, 0.8)) * dt
            ang = float(rng.uniform(-0.3, 0.3))
            t, x, y = t + dt, x + step * math.cos(ang), y + step * math.sin(ang)
    return TrajectoryDatabase.from_samples(samples)


def test_criterion_5_necklace_scale(report):
    details, ok = [], True
    # far-apart tracks (alibi, every overlapping pair evaluated) and crossing-close tracks
    for gap in (40.0, 0.5):
        db = _tracks(gap, seed=5)
        start = time.perf_counter()
        pruned = run_alibi(db, "a", "b", exhaustive=True)
        wall = time.perf_counter() - start
        naive = run_alibi(db, "a", "b", exhaustive=True, prune=False)
        same = pruned.verdict == naive.verdict and [(c["a"], c["b"]) for c in pruned.cases] == [
            (c["a"], c["b"]) for c in naive.cases
        ]
        accounted = pruned.pairs_considered + pruned.pairs_pruned == 100 * 100
        ok &= wall < 1.0 and same and accounted
        details.append(f"gap={gap} alibi={pruned.verdict['alibi']} wall={wall * 1e3:.0f}ms agree={same}")
    report(5, ok, "; ".join(details))


def test_criterion_6_disc_oracle_agreement(report):
    rng = np.random.default_rng(6)

    def rand_disc() -> Disc:
        return Disc(float(rng.uniform(-5, 5)), float(rng.uniform(-5, 5)), 4.0 - float(rng.uniform(0, 4)))

    results = {}
    for k, fn in ((3, three_discs_intersect), (4, four_discs_intersect)):
        wrong = excluded = 0
        for _ in range(10_000):
            ds = [rand_disc() for _ in range(k)]
            orc = oracle_discs_intersect(ds, grid=64)
            if abs(orc.margin) < MARGIN:
                excluded += 1
            elif fn(*ds) != orc.intersects:
                wrong += 1
        results[k] = (wrong, excluded)
    s2 = three_discs_intersect(Disc(0, 0, 1), Disc(2, 0, 1), Disc(1, math.sqrt(3), 1))
    s1 = three_discs_intersect(Disc(0, 0, 1), Disc(1, 0, 1), Disc(0.5, math.sqrt(3) / 2, 1))
    ok = results[3][0] == 0 and results[4][0] == 0 and not s2 and s1
    report(6, ok, f"triples(disagree,excluded)={results[3]} quads={results[4]} side2={s2} side1={s1}")


def _planted(rng, kind: int) -> tuple[np.ndarray, list[float]]:
    lead = float(rng.uniform(0.1, 10)) * float(rng.choice([-1, 1]))
    pairs: list[tuple[float, float]] = []
    if kind == 0:
        roots = list(rng.uniform(-10, 10, 4))
    elif kind == 1:
        roots = list(rng.uniform(-10, 10, 2))
        pairs = [(float(rng.uniform(-5, 5)), float(rng.uniform(0.1, 5)))]
    elif kind == 2:
        r = float(rng.uniform(-10, 10))
        roots = [r, r, *rng.uniform(-10, 10, 2)]
    elif kind == 3:
        roots = []
        pairs = [(float(rng.uniform(-5, 5)), float(rng.uniform(0.1, 5))) for _ in range(2)]
    elif kind == 4:
        roots = list(rng.uniform(-10, 10, 3))
    else:
        roots = list(rng.uniform(-10, 10, 2))
    c = np.array([lead])
    for r in roots:
        c = np.polymul(c, [1.0, -r])
    for re, im in pairs:
        c = np.polymul(c, [1.0, -2 * re, re * re + im * im])
    return np.concatenate([np.zeros(5 - len(c)), c]), sorted(set(float(r) for r in roots))


def test_criterion_7_quartic_solver(report):
    rng = np.random.default_rng(7)
    missed = bad_residual = collapsed = 0
    worst = 0.0
    for n in range(10_000):
        # kinds 4 and 5 are planted cubics (a=0) and quadratics (a=b=0)
        kind = n % 6
        coeffs, roots = _planted(rng, kind)
        p = Poly4(*coeffs)
        got = real_roots(p)
        collapsed += kind >= 4
        for r in roots:
            err = min((abs(g - r) / abs(r) for g in got), default=math.inf)
            worst = max(worst, err)
            missed += err > 1e-7
        bad_residual += sum(abs(p(g)) > 1e-9 * p.scale(g) for g in got)
    exact = (
        real_roots(Poly4(0, 1, 0, -1, 0)) == pytest.approx([-1, 0, 1], abs=1e-12)
        and real_roots(Poly4(0, 0, 1, 0, -4)) == pytest.approx([-2, 2])
        and real_roots(Poly4(0, 0, 0, 2, -1)) == pytest.approx([0.5])
    )
    ok = missed == 0 and bad_residual == 0 and exact
    report(7, ok, f"missed={missed} bad_residual={bad_residual} worst_rel={worst:.2e} collapse_inputs={collapsed} exact={exact}")


def _transform(b: Bead, shift, angle: float, scale: float) -> Bead:
    c, s = math.cos(angle), math.sin(angle)

    def f(p: TimeSpacePoint) -> TimeSpacePoint:
        x, y = c * p.x - s * p.y, s * p.x + c * p.y
        return TimeSpacePoint(scale * (p.t + shift[0]), scale * (x + shift[1]), scale * (y + shift[2]))

    return Bead(f(b.origin), f(b.destination), b.vmax)


def test_criterion_8_invariance(report):
    rng = np.random.default_rng(8)
    flips = trials = 0
    for _ in range(1_000):
        b1, b2 = random_nonempty_bead(rng), random_nonempty_bead(rng)
        base = beads_intersect(b1, b2).intersects
        for _ in range(100):
            shift = rng.uniform(-100, 100, 3)
            angle = float(rng.uniform(0, 2 * math.pi))
            scale = float(10 ** rng.uniform(-2, 2))
            got = beads_intersect(_transform(b1, shift, angle, scale), _transform(b2, shift, angle, scale))
            trials += 1
            flips += got.intersects != base
    report(8, flips == 0, f"trials={trials} flips={flips}")


def test_criterion_9_case_coverage(report, random_pairs):
    certain = [r for r in random_pairs if r.oracle.intersects and r.oracle.margin >= MARGIN]
    uncovered = unsound = 0
    for r in certain:
        hits = [w for w in (case_i(r.b1, r.b2), case_ii(r.b1, r.b2), case_iii(r.b1, r.b2)) if w is not None]
        uncovered += not hits
        unsound += sum(not within_contract(r.b1, r.b2, w) for w in hits)
    ok = bool(certain) and uncovered == 0 and unsound == 0
    report(9, ok, f"certain_pairs={len(certain)} uncovered={uncovered} unsound_witnesses={unsound}")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
