"""Counting labeled relative equilibria per strength G4.

Two labeled configurations are the same class when a rotation, scaling and
translation carries one onto the other; mirror images stay distinct.  Every
certified geometric solution is expanded over all strength-preserving
relabelings and the copies are deduplicated by a similarity-invariant
fingerprint, so the totals are orbit counts rather than table lookups.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Optional

import numpy as np

from . import collinear, kite, rhombus
from .vortexcore import EquilibriumCertificate, PlanarConfiguration

COLUMNS = ("collinear", "convex", "concave_interior", "concave_exterior", "equilateral", "rhombus_extra")
CSV_COLUMNS = ("gamma4",) + COLUMNS + ("total", "published_total", "match")
FINGERPRINT_TOL = 1e-7


class CensusDomainError(ValueError):
    pass


# labeled copies per geometric solution, as tabulated in the reference count
_LABELINGS = {
    "square": 6,
    "convex": 6,
    "equilateral-interior": 2,
    "isosceles-interior": 3,
    "isosceles-exterior": 3,
}


def count_labelings(geometry: str, gamma4) -> int:
    if geometry in ("equilateral-interior", "equilateral-exterior") and Fraction(gamma4) == 1:
        return 8
    if geometry == "equilateral-exterior":
        raise CensusDomainError("equilateral-exterior only exists at G4 = 1")
    try:
        return _LABELINGS[geometry]
    except KeyError:
        raise CensusDomainError(f"unknown geometry {geometry!r}") from None


# ---------------------------------------------------------------------------
# orbits


def fingerprint(positions) -> np.ndarray:
    """w_i = (2 z_i - z_3 - z_4) / (z_4 - z_3) for i = 1, 2: invariant under
    rotation, scaling and translation, and it determines the labeled shape."""
    z = np.array([complex(x, y) for x, y in positions])
    return (2 * z[:2] - z[2] - z[3]) / (z[3] - z[2])


def relabelings(gamma) -> list:
    """Permutations s with gamma[s[i]] == gamma[i]."""
    return [s for s in permutations(range(4)) if all(gamma[s[i]] == gamma[i] for i in range(4))]


def _relabel(positions, s) -> tuple:
    out = [None] * 4
    for i, p in enumerate(positions):
        out[s[i]] = p
    return tuple(out)


class FingerprintSet:
    def __init__(self, tol: float = FINGERPRINT_TOL):
        self.tol = tol
        self._items: list = []

    def __len__(self):
        return len(self._items)

    def add(self, w: np.ndarray) -> bool:
        for v in self._items:
            if np.abs(v - w).max() <= self.tol * (1 + np.abs(w).max()):
                return False
        self._items.append(w)
        return True


def labeled_copies(cfg: PlanarConfiguration) -> list:
    """Distinct labeled copies of ``cfg`` under strength-preserving relabeling."""
    seen = FingerprintSet()
    out = []
    for s in relabelings(cfg.vorticities.gamma):
        pos = _relabel(cfg.positions, s)
        if seen.add(fingerprint(pos)):
            out.append(pos)
    return out


def orbit_count(cfg: PlanarConfiguration) -> int:
    return len(labeled_copies(cfg))


# ---------------------------------------------------------------------------
# records and rows


@dataclass(frozen=True)
class SolutionRecord:
    source: str
    geometry: str
    chart: dict
    certificate: EquilibriumCertificate
    labelings: int
    counted: int

    def to_json(self) -> dict:
        return {
            "source": self.source,
            "geometry": self.geometry,
            "chart": self.chart,
            "certificate": self.certificate.to_json(),
            "labelings": self.labelings,
            "counted": self.counted,
        }


@dataclass(frozen=True)
class PublishedRow:
    label: str
    total: int
    breakdown: Optional[dict]


# published rows; the per-class breakdowns are those listed in the counting
# argument, which is absent below G4 = -1 and does not always sum to the total
_PUBLISHED_BREAKDOWNS = {
    "G4=0": {"collinear": 12, "convex": 6, "equilateral": 2, "concave_interior": 3, "concave_exterior": 3},
    "0<G4<1": {"collinear": 12, "convex": 6, "equilateral": 2, "concave_exterior": 6, "concave_interior": 3},
    "G4=1": {"collinear": 12, "convex": 6, "equilateral": 16},
    "G4>1": {"collinear": 12, "convex": 6, "equilateral": 2, "concave_interior": 3},
    "-1/2<G4<0": {"collinear": 12, "convex": 6, "equilateral": 2},
    "G4=-1/2": {"collinear": 7, "convex": 6, "equilateral": 3},
    "-1<G4<-1/2": {"collinear": 6, "convex": 6, "equilateral": 3},
}


def published_row(gamma4) -> Optional[PublishedRow]:
    g = Fraction(gamma4)
    if g == 0:
        label, total = "G4=0", 26
    elif 0 < g < 1:
        label, total = "0<G4<1", 29
    elif g == 1:
        label, total = "G4=1", 34
    elif g > 1:
        label, total = "G4>1", 23
    elif Fraction(-1, 2) < g < 0:
        label, total = "-1/2<G4<0", 20
    elif g == Fraction(-1, 2):
        label, total = "G4=-1/2", 15
    elif -1 < g < Fraction(-1, 2):
        label, total = "-1<G4<-1/2", 14
    elif g < -1:
        label, total = "G4<-1", 8
    else:
        return None
    return PublishedRow(label, total, _PUBLISHED_BREAKDOWNS.get(label))


@dataclass(frozen=True)
class Discrepancy:
    family: str
    computed: Optional[int]
    published: Optional[int]
    note: str = ""

    def to_json(self) -> dict:
        return {"family": self.family, "computed": self.computed, "published": self.published, "note": self.note}


@dataclass(frozen=True)
class CensusRow:
    gamma4: Fraction
    counts: dict
    total: int
    published_total: Optional[int]
    complete: bool = True
    discrepancies: tuple = ()
    records: tuple = field(default_factory=tuple, repr=False)

    @property
    def match(self) -> Optional[bool]:
        return None if self.published_total is None else self.total == self.published_total

    def csv_row(self) -> dict:
        row = {"gamma4": str(self.gamma4)}
        row.update({c: self.counts[c] for c in COLUMNS})
        row.update(total=self.total, published_total="" if self.published_total is None else self.published_total,
                   match="" if self.match is None else str(self.match).lower())
        return row

    def to_json(self, with_records: bool = True) -> dict:
        out = {
            "gamma4": str(self.gamma4),
            "counts": dict(self.counts),
            "total": self.total,
            "published_total": self.published_total,
            "match": self.match,
            "complete": self.complete,
            "discrepancies": [d.to_json() for d in self.discrepancies],
        }
        if with_records:
            out["records"] = [r.to_json() for r in self.records]
        return out


_KITE_COLUMN = {
    "square": "convex",
    "convex": "convex",
    "equilateral-barycenter": "equilateral",
    "concave-interior": "concave_interior",
    "concave-exterior": "concave_exterior",
}

_KITE_GEOMETRY = {
    "square": "square",
    "convex": "convex",
    "equilateral-barycenter": "equilateral-interior",
    "concave-interior": "isosceles-interior",
    "concave-exterior": "isosceles-exterior",
}


def _kite_geometry(sol) -> str:
    if sol.cls == "concave-exterior" and abs(sol.k + 1 / np.sqrt(3)) < 1e-9 and abs(sol.l - np.sqrt(3)) < 1e-9:
        return "equilateral-exterior"
    return _KITE_GEOMETRY[sol.cls]


def census_at(gamma4, tol: float = 1e-10) -> CensusRow:
    """Certified solutions of every family at one strength, expanded into
    labeled classes and compared with the published row."""
    g = Fraction(gamma4)
    seen = FingerprintSet()
    counts = dict.fromkeys(COLUMNS, 0)
    records = []
    issues = []
    complete = True

    def add(source, geometry, column, cfg, cert, chart):
        new = 0
        copies = labeled_copies(cfg)
        for pos in copies:
            if seen.add(fingerprint(pos)):
                new += 1
        counts[column] += new
        records.append(SolutionRecord(source, geometry, chart, cert, len(copies), new))

    # collinear
    col = collinear.census(g)
    sols = collinear.solve(g, tol=tol)
    good = [s for s in sols if s.certificate is not None and s.certificate.verdict]
    if len(good) != col.solution_count:
        complete = False
        issues.append(Discrepancy("collinear", len(good), col.solution_count,
                                  "certified solutions differ from the exact root count"))
    for s in good:
        add("collinear", "collinear", "collinear", s.configuration(), s.certificate,
            {"x1": s.x1, "x2": s.x2, "symmetric": s.symmetric})

    # kites; equilateral shapes first so coincident labelings land there
    ks = kite.solve_kite(g, tol=tol)
    ks.sort(key=lambda s: (_KITE_COLUMN[s.cls] != "equilateral", s.cls, s.k, s.l))
    for s in ks:
        if not s.resolved or s.certificate is None or not s.certificate.verdict:
            complete = False
            issues.append(Discrepancy(s.cls, None, None, f"unresolved kite candidate at ({s.k:.6g}, {s.l:.6g})"))
            continue
        geometry = _kite_geometry(s)
        column = "equilateral" if geometry.startswith("equilateral") else _KITE_COLUMN[s.cls]
        add("kite", geometry, column, s.configuration(), s.certificate, {"k": float(s.k), "l": float(s.l)})

    # rhombi count only when certified and not already a kite
    for fam in rhombus.enumerate_families(g, tol):
        if fam.certified:
            add("rhombus", "rhombus", "rhombus_extra", fam.configuration, fam.certificate,
                {"family": fam.family, "x_squared": float(fam.x_squared)})

    total = sum(counts.values())
    pr = published_row(g)
    if pr is not None:
        if pr.breakdown is not None:
            for c in COLUMNS:
                want = pr.breakdown.get(c, 0)
                if counts[c] != want:
                    issues.append(Discrepancy(c, counts[c], want))
            if sum(pr.breakdown.values()) != pr.total:
                issues.append(Discrepancy("total", sum(pr.breakdown.values()), pr.total,
                                          "published breakdown does not sum to the published total"))
        elif total != pr.total:
            issues.append(Discrepancy("total", total, pr.total, "no published breakdown for this range"))
    for r in records:
        if r.source != "kite":
            continue
        try:
            want = count_labelings(r.geometry, g)
        except CensusDomainError:
            continue
        if want != r.labelings:
            issues.append(Discrepancy(f"labelings:{r.geometry}", r.labelings, want,
                                      "orbit count differs from the tabulated multiplicity"))
    return CensusRow(g, counts, total, pr.total if pr else None, complete, tuple(_dedupe(issues)), tuple(records))


def _dedupe(items):
    out = []
    for d in items:
        if d not in out:
            out.append(d)
    return out


# ---------------------------------------------------------------------------
# sweeps


@dataclass(frozen=True)
class SweepResult:
    rows: tuple
    brackets: tuple
    critical_values: tuple

    def to_json(self) -> dict:
        return {
            "rows": [r.to_json(with_records=False) for r in self.rows],
            "collinear_brackets": [[str(a), str(b)] for a, b in self.brackets],
            "kite_critical_values": [str(v) for v in self.critical_values],
        }


def sample_points(lo, hi, samples: int) -> list:
    lo, hi = Fraction(lo), Fraction(hi)
    if lo == hi:
        return [lo]
    if samples < 2:
        raise ValueError("samples must be at least 2")
    if lo > hi:
        raise ValueError("empty range")
    return [lo + (hi - lo) * Fraction(n, samples - 1) for n in range(samples)]


def _row(g):
    return census_at(g)


def sweep(lo, hi, samples: int, workers: int = 1, brackets: bool = True) -> SweepResult:
    pts = sample_points(lo, hi, samples)
    if workers > 1 and len(pts) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            rows = list(ex.map(_row, pts))
    else:
        rows = [_row(g) for g in pts]
    br, crit = (), ()
    if brackets and pts[0] != pts[-1]:
        br = tuple(collinear.bifurcation_values(pts[0], pts[-1]))
        crit = tuple(Fraction(round(c.gamma4)) for c in kite.critical_points() if pts[0] < c.gamma4 < pts[-1])
    return SweepResult(tuple(rows), br, crit)


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r.csv_row())
    return buf.getvalue()
