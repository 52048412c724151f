import csv
import io
import math
from fractions import Fraction

import numpy as np
import pytest

from vortex_atlas import census as C
from vortex_atlas import kite as K
from vortex_atlas import rhombus as R
from vortex_atlas.vortexcore import PlanarConfiguration

R3 = math.sqrt(3)
CENTERED = ((-1.0, 0.0), (1.0, 0.0), (0.0, -R3), (0.0, -1 / R3))

# computed per-class counts (frozen from census_at) next to the published totals
COMPUTED = {
    "0": ((12, 6, 6, 6, 2, 0), 32, 26),
    "1/2": ((12, 6, 6, 12, 2, 0), 38, 29),
    "1": ((12, 6, 0, 0, 8, 0), 26, 34),
    "2": ((12, 6, 6, 0, 2, 0), 26, 23),
    "-1/4": ((12, 12, 6, 6, 2, 0), 38, 20),
    "-1/2": ((6, 12, 0, 6, 2, 0), 26, 15),
    "-3/4": ((6, 12, 0, 6, 2, 0), 26, 14),
    "-2": ((0, 6, 0, 0, 2, 0), 8, 8),
    "-3": ((0, 6, 6, 0, 2, 0), 14, 8),
}


def test_count_labelings_table():
    assert C.count_labelings("square", 1) == 6
    assert C.count_labelings("convex", Fraction(1, 2)) == 6
    assert C.count_labelings("equilateral-interior", 2) == 2
    assert C.count_labelings("equilateral-interior", 1) == 8
    assert C.count_labelings("equilateral-exterior", 1) == 8
    assert C.count_labelings("isosceles-interior", 0) == 3
    assert C.count_labelings("isosceles-exterior", 0) == 3
    with pytest.raises(C.CensusDomainError):
        C.count_labelings("equilateral-exterior", 2)
    with pytest.raises(C.CensusDomainError):
        C.count_labelings("pentagon", 1)


def test_orbit_counts():
    assert C.orbit_count(R.embed(1)) == 6
    assert C.orbit_count(PlanarConfiguration(CENTERED, (1, 1, 1, 2))) == 2
    assert C.orbit_count(PlanarConfiguration(CENTERED, (1, 1, 1, 1))) == 8
    # a kite with only its mirror symmetry: all 3! labelings of the unit vortices are distinct
    assert C.orbit_count(K.kite_configuration(1.27, 1.06, Fraction(1, 2))) == 6


def test_fingerprint_is_similarity_invariant():
    cfg = K.kite_configuration(0.7, 1.3, 1)
    moved = cfg.transformed(2.1, 0.37, (5.0, -1.0))
    assert np.allclose(C.fingerprint(cfg.positions), C.fingerprint(moved.positions), atol=1e-12)
    # a reflection is a different labeled shape
    mirrored = tuple((x, -y) for x, y in moved.positions)
    assert not np.allclose(C.fingerprint(cfg.positions), C.fingerprint(mirrored), atol=1e-6)


def test_fingerprint_set_dedupes():
    s = C.FingerprintSet()
    w = np.array([0.5 + 1j, -0.5 + 1j])
    assert s.add(w) and not s.add(w + 1e-10) and s.add(w + 1e-3)
    assert len(s) == 2


@pytest.mark.parametrize("g", sorted(COMPUTED))
def test_census_rows(g):
    counts, total, published = COMPUTED[g]
    row = C.census_at(Fraction(g))
    assert tuple(row.counts[c] for c in C.COLUMNS) == counts
    assert row.total == total and row.published_total == published
    assert row.complete
    assert row.match == (total == published)
    assert all(r.certificate.verdict for r in row.records)
    if total != published:
        assert row.discrepancies


def test_square_row_reports_equilateral_double_count():
    row = C.census_at(1)
    assert [(d.family, d.computed, d.published) for d in row.discrepancies] == [("equilateral", 8, 16)]


def test_published_breakdowns_that_do_not_sum():
    for g in (Fraction(-1, 2), Fraction(-3, 4)):
        notes = [d for d in C.census_at(g).discrepancies if d.family == "total"]
        assert len(notes) == 1 and notes[0].computed == notes[0].published + 1


def test_published_rows():
    assert C.published_row(Fraction(1, 3)).total == 29
    assert C.published_row(-5).breakdown is None
    assert C.published_row(-1) is None


def test_sample_points():
    assert C.sample_points(0, 1, 3) == [0, Fraction(1, 2), 1]
    assert C.sample_points(Fraction(1, 2), Fraction(1, 2), 1) == [Fraction(1, 2)]
    with pytest.raises(ValueError):
        C.sample_points(0, 1, 1)
    with pytest.raises(ValueError):
        C.sample_points(1, 0, 3)


def test_sweep_is_ordered_and_carries_transitions():
    res = C.sweep(-1, 2, 4)
    assert [r.gamma4 for r in res.rows] == [-1, 0, 1, 2]
    assert res.critical_values == (1,)
    (br,) = res.brackets
    assert br[0] < Fraction(-1, 2) <= br[1]


def test_single_point_sweep():
    res = C.sweep(Fraction(1, 2), Fraction(1, 2), 1)
    assert len(res.rows) == 1 and res.brackets == ()


def test_csv_columns():
    text = C.rows_to_csv([C.census_at(-2)])
    (row,) = list(csv.DictReader(io.StringIO(text)))
    assert tuple(row) == C.CSV_COLUMNS
    assert row["total"] == "8" and row["published_total"] == "8" and row["match"] == "true"
