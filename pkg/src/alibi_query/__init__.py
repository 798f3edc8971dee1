"""Decide whether two moving objects, known only through time-stamped samples
and speed bounds, could have met."""

from .core import (
    EPS,
    AlibiVerdict,
    Bead,
    Case,
    Cone,
    DatabaseError,
    Disc,
    Necklace,
    Sample,
    Side,
    TimeSpacePoint,
    TrajectoryDatabase,
    bead_contains_point,
    bead_nonempty,
    build_necklace,
    time_slice,
)
from .discs import alibi_at_time, circle_circle_intersection, four_discs_intersect, three_discs_intersect
from .engine import QueryReport, bench, load_database, run_alibi, run_alibi_at
from .geometry import RimPlane, in_half_bead, initial_contact, on_bottom_cone, on_mantel, on_rim, on_top_cone
from .oracle import OracleVerdict, oracle_beads_intersect, oracle_discs_intersect
from .polyroots import Poly4, real_roots
from .predicate import beads_intersect, case_i, case_ii, case_iii, normalize_pair

__all__ = [
    "EPS",
    "AlibiVerdict",
    "Bead",
    "Case",
    "Cone",
    "DatabaseError",
    "Disc",
    "Necklace",
    "OracleVerdict",
    "Poly4",
    "QueryReport",
    "RimPlane",
    "Sample",
    "Side",
    "TimeSpacePoint",
    "TrajectoryDatabase",
    "alibi_at_time",
    "bead_contains_point",
    "bead_nonempty",
    "beads_intersect",
    "bench",
    "build_necklace",
    "case_i",
    "case_ii",
    "case_iii",
    "circle_circle_intersection",
    "four_discs_intersect",
    "in_half_bead",
    "initial_contact",
    "load_database",
    "normalize_pair",
    "on_bottom_cone",
    "on_mantel",
    "on_rim",
    "on_top_cone",
    "oracle_beads_intersect",
    "oracle_discs_intersect",
    "real_roots",
    "run_alibi",
    "run_alibi_at",
    "three_discs_intersect",
    "time_slice",
]
