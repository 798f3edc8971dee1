"""Database ingestion, necklace-level queries, and the benchmark harness."""

from __future__ import annotations

import bisect
import csv
import json
import math
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterator, Literal, Optional, Sequence

import numpy as np

from .core import (
    Bead,
    DatabaseError,
    Necklace,
    Sample,
    TrajectoryDatabase,
    build_necklace,
)
from .discs import alibi_at_time
from .oracle import oracle_beads_intersect
from .predicate import beads_intersect

CSV_HEADER = ["label", "t", "x", "y", "v"]
MARGIN_EPS = 1e-6

# Three experiment sets: the second bead is shifted later in time from set to set.
TABLE_PAIRS: tuple[tuple[str, Bead, Bead], ...] = tuple(
    (f"set{k + 1}-{chr(ord('a') + i)}", Bead.of(0, 0, 0, 2, 0, 2, 1.9), Bead.of(t0, x, 0, t1, x, y, 2))
    for k, (t0, t1) in enumerate(((0, 2), (1, 3), (3, 4)))
    for i, (x, y) in enumerate(((3, 2), (4, 2), (3, 0), (4, 0)))
)


def _parse_float(text: str, what: str, where: str) -> float:
    try:
        value = float(text)
    except (TypeError, ValueError):
        raise DatabaseError(f"{where}: field {what!r} is not a number: {text!r}") from None
    if not math.isfinite(value):
        raise DatabaseError(f"{where}: field {what!r} is not finite")
    return value


def _records_from_csv(path: Path) -> Iterator[tuple[str, dict[str, Any]]]:
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != CSV_HEADER:
            raise DatabaseError(f"line 1: expected header {','.join(CSV_HEADER)}, got {header!r}")
        for row in reader:
            where = f"line {reader.line_num}"
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != len(CSV_HEADER):
                raise DatabaseError(f"{where}: expected {len(CSV_HEADER)} fields, got {len(row)}")
            yield where, dict(zip(CSV_HEADER, (cell.strip() for cell in row)))


def _records_from_json(path: Path) -> Iterator[tuple[str, dict[str, Any]]]:
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise DatabaseError(f"line {exc.lineno}: invalid JSON: {exc.msg}") from None
    if not isinstance(data, list):
        raise DatabaseError("top-level JSON value must be an array of sample objects")
    for i, rec in enumerate(data):
        where = f"record {i}"
        if not isinstance(rec, dict):
            raise DatabaseError(f"{where}: expected an object")
        missing = [k for k in CSV_HEADER if k not in rec]
        if missing:
            raise DatabaseError(f"{where}: missing field(s) {', '.join(missing)}")
        yield where, rec


def load_database(path: str | Path, format: Optional[Literal["csv", "json"]] = None) -> TrajectoryDatabase:
    """Read samples from CSV (header ``label,t,x,y,v``) or a JSON array of objects.

    The format defaults to the file suffix.  Errors name the offending line (CSV)
    or record index (JSON).
    """
    path = Path(path)
    fmt = format or ("json" if path.suffix.lower() == ".json" else "csv")
    if fmt not in ("csv", "json"):
        raise DatabaseError(f"unknown format {fmt!r}")
    records = _records_from_csv(path) if fmt == "csv" else _records_from_json(path)
    samples: list[Sample] = []
    seen: dict[tuple[str, float], str] = {}
    for where, rec in records:
        label = str(rec["label"])
        if not label:
            raise DatabaseError(f"{where}: empty label")
        t, x, y, v = (_parse_float(rec[k], k, where) for k in ("t", "x", "y", "v"))
        if v < 0:
            raise DatabaseError(f"{where}: negative speed limit {v} for label {label!r}")
        key = (label, t)
        if key in seen:
            raise DatabaseError(f"{where}: duplicate sample for label {label!r} at t={t} (first at {seen[key]})")
        seen[key] = where
        samples.append(Sample(label, t, x, y, v))
    return TrajectoryDatabase.from_samples(samples)


@dataclass(frozen=True)
class QueryReport:
    kind: str
    labels: tuple[str, ...]
    verdict: dict[str, Any]
    cases: tuple[dict[str, Any], ...] = ()
    pairs_considered: int = 0
    pairs_pruned: int = 0
    pairs_evaluated: int = 0
    timings: dict[str, int] = field(default_factory=dict)
    stats: dict[str, Any] = field(default_factory=dict)

    def to_dict(self, timings: bool = True) -> dict[str, Any]:
        out: dict[str, Any] = {
            "kind": self.kind,
            "labels": list(self.labels),
            "verdict": self.verdict,
            "cases": list(self.cases),
            "pairs_considered": self.pairs_considered,
            "pairs_pruned": self.pairs_pruned,
            "pairs_evaluated": self.pairs_evaluated,
        }
        if self.stats:
            out["stats"] = self.stats
        if timings:
            out["timings"] = self.timings
        return out

    def to_json(self, timings: bool = True) -> str:
        return json.dumps(self.to_dict(timings), indent=2)


def _timing_summary(samples_ns: Sequence[int]) -> dict[str, int]:
    if not samples_ns:
        return {"median_ns": 0, "p95_ns": 0, "total_ns": 0}
    arr = np.asarray(samples_ns, dtype=np.int64)
    return {
        "median_ns": int(np.median(arr)),
        "p95_ns": int(np.percentile(arr, 95)),
        "total_ns": int(arr.sum()),
    }


def overlapping_pairs(a: Necklace, b: Necklace) -> list[tuple[int, int]]:
    """Index pairs whose closed time slabs overlap, in lexicographic order.

    Necklace beads are ordered with nondecreasing starts and ends, so a single
    forward pointer into ``b`` suffices.
    """
    out: list[tuple[int, int]] = []
    j0 = 0
    for i, ba in enumerate(a.beads):
        while j0 < len(b) and b[j0].destination.t < ba.origin.t:
            j0 += 1
        j = j0
        while j < len(b) and b[j].origin.t <= ba.destination.t:
            out.append((i, j))
            j += 1
    return out


def _witness(p) -> Optional[list[float]]:
    return None if p is None else [p.t, p.x, p.y]


def run_alibi(
    db: TrajectoryDatabase,
    label_a: str,
    label_b: str,
    exhaustive: bool = False,
    prune: bool = True,
) -> QueryReport:
    """Alibi holds when no bead of one necklace meets a bead of the other."""
    na, nb = build_necklace(db, label_a), build_necklace(db, label_b)
    total = len(na) * len(nb)
    if prune:
        pairs = overlapping_pairs(na, nb)
    else:
        pairs = [(i, j) for i in range(len(na)) for j in range(len(nb))]
    cases: list[dict[str, Any]] = []
    times: list[int] = []
    evaluated = 0
    for i, j in pairs:
        start = time.perf_counter_ns()
        res = beads_intersect(na[i], nb[j])
        times.append(time.perf_counter_ns() - start)
        evaluated += 1
        if res.intersects:
            cases.append({"a": i, "b": j, "case": res.fired_case.value, "witness": _witness(res.witness)})
            if not exhaustive:
                break
    return QueryReport(
        kind="alibi",
        labels=(label_a, label_b),
        verdict={"alibi": not cases},
        cases=tuple(cases),
        pairs_considered=len(pairs),
        pairs_pruned=total - len(pairs),
        pairs_evaluated=evaluated,
        timings=_timing_summary(times),
    )


def _bead_at(n: Necklace, t0: float) -> Optional[Bead]:
    if not n.start <= t0 <= n.end:
        return None
    starts = [b.origin.t for b in n.beads]
    k = max(0, bisect.bisect_right(starts, t0) - 1)
    return n[k]


def run_alibi_at(db: TrajectoryDatabase, label_a: str, label_b: str, t0: float) -> QueryReport:
    if not math.isfinite(t0):
        raise ValueError("t0 must be finite")
    na, nb = build_necklace(db, label_a), build_necklace(db, label_b)
    start = time.perf_counter_ns()
    ba, bb = _bead_at(na, t0), _bead_at(nb, t0)
    met = ba is not None and bb is not None and alibi_at_time(ba, bb, t0)
    elapsed = time.perf_counter_ns() - start
    return QueryReport(
        kind="alibi-at",
        labels=(label_a, label_b),
        verdict={"met_possible": met, "t0": t0},
        pairs_considered=int(ba is not None and bb is not None),
        pairs_evaluated=int(ba is not None and bb is not None),
        timings=_timing_summary([elapsed]),
    )


def random_nonempty_bead(rng: np.random.Generator, box: float = 5.0, vmax: float = 3.0) -> Bead:
    """Apexes uniform in ``[-box, box]**3`` (time ordered), speed uniform in ``(0, vmax]``;
    redrawn until the bead is nonempty."""
    while True:
        a, b = rng.uniform(-box, box, 3), rng.uniform(-box, box, 3)
        v = vmax - rng.uniform(0.0, vmax)
        if a[0] > b[0]:
            a, b = b, a
        if math.hypot(b[1] - a[1], b[2] - a[2]) <= v * (b[0] - a[0]):
            return Bead.of(*a.tolist(), *b.tolist(), v)


def _time_ns(b1: Bead, b2: Bead, repeat: int) -> int:
    best = None
    for _ in range(repeat):
        start = time.perf_counter_ns()
        beads_intersect(b1, b2)
        elapsed = time.perf_counter_ns() - start
        best = elapsed if best is None else min(best, elapsed)
    return int(best or 0)


def bench(
    pairs: int = 100,
    seed: int = 0,
    table: bool = False,
    slices: int = 2048,
    repeat: int = 3,
) -> QueryReport:
    """Time the analytic predicate and compare it with the sampling oracle.

    With ``table`` the twelve fixed experiment pairs replace the random ones.
    Pairs whose oracle margin is below ``MARGIN_EPS`` count as unreliable and
    are left out of the agreement rate.
    """
    if pairs < 1:
        raise ValueError("pairs must be >= 1")
    if table:
        work = [(name, b1, b2) for name, b1, b2 in TABLE_PAIRS]
    else:
        rng = np.random.default_rng(seed)
        work = [(str(k), random_nonempty_bead(rng), random_nonempty_bead(rng)) for k in range(pairs)]
    cases: list[dict[str, Any]] = []
    times: list[int] = []
    oracle_ns: list[int] = []
    agree = disagree = unreliable = 0
    for name, b1, b2 in work:
        res = beads_intersect(b1, b2)
        times.append(_time_ns(b1, b2, repeat))
        start = time.perf_counter_ns()
        orc = oracle_beads_intersect(b1, b2, slices)
        oracle_ns.append(time.perf_counter_ns() - start)
        reliable = abs(orc.margin) >= MARGIN_EPS
        if not reliable:
            unreliable += 1
        elif res.intersects == orc.intersects:
            agree += 1
        else:
            disagree += 1
        cases.append(
            {
                "pair": name,
                "intersects": res.intersects,
                "case": res.fired_case.value,
                "oracle": orc.intersects,
                "margin": orc.margin,
                "reliable": reliable,
            }
        )
    decided = agree + disagree
    rate = agree / decided if decided else 1.0
    return QueryReport(
        kind="bench",
        labels=(),
        verdict={"all_agree": disagree == 0, "agreement": rate},
        cases=tuple(cases),
        pairs_considered=len(work),
        pairs_evaluated=len(work),
        timings=_timing_summary(times),
        stats={
            "seed": None if table else seed,
            "source": "table" if table else "random",
            "agree": agree,
            "disagree": disagree,
            "unreliable": unreliable,
            "oracle_median_ns": _timing_summary(oracle_ns)["median_ns"],
        },
    )
