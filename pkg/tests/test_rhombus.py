import json
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from vortex_atlas import rhombus as R
from vortex_atlas.vortexcore import oriented_areas


@given(st.floats(0.01, 50).filter(lambda x: abs(x * x - 1 / 3) > 1e-3))
@settings(max_examples=200, deadline=None)
def test_round_trip_ratio(x):
    g = R.gamma4_of_ratio(x)
    if R.family_of(g) is None:
        return
    assert math.sqrt(R.ratio_of_gamma4(g)) == pytest.approx(x, rel=1e-12)


def test_round_trip_exact():
    for x in (Fraction(1, 7), Fraction(2, 3), Fraction(1), Fraction(5, 2), Fraction(9)):
        assert R.ratio_of_gamma4(R.gamma4_of_ratio(x)) == x * x


def test_poles_and_gaps():
    with pytest.raises(R.RhombusPoleError):
        R.ratio_of_gamma4(Fraction(-1, 3))
    with pytest.raises(R.RhombusPoleError):
        R.gamma4_of_ratio(1 / math.sqrt(3))
    for g in (Fraction(-3), Fraction(-2), Fraction(-1), Fraction(-1, 2)):
        with pytest.raises(R.NoRhombus):
            R.ratio_of_gamma4(g)
        assert R.enumerate_families(g) == []


@pytest.mark.parametrize("g", ["1", "1/2", "0", "-1/4", "2", "7", "-4", "-10", "-31/10"])
def test_exact_relation_and_rotation_rate(g):
    chk = R.exact_check(Fraction(g))
    assert chk.relation_holds
    assert chk.lambda_matches
    assert chk.lambda_scaled == -3 * (1 + Fraction(g))


def test_dziobek_products_only_at_square_and_zero():
    assert R.exact_check(1).dziobek_holds
    assert R.exact_check(0).dziobek_holds
    for g in ("1/2", "2", "-1/4", "-4"):
        assert not R.exact_check(Fraction(g)).dziobek_holds


def test_moment_of_inertia_of_square():
    assert R.exact_moment_of_inertia(1) == 2


def test_sign_band_on_log_grid():
    for x in np.logspace(-3, 3, 601):
        if abs(x * x - 3) < 1e-9 or abs(x * x - 1 / 3) < 1e-9:
            continue
        assert R.sign_band(float(x)) == int(np.sign(R.gamma4_of_ratio(float(x))))


def test_ratio_is_monotone_above_one():
    gs = np.linspace(1, 50, 400)
    xs = [R.ratio_of_gamma4(float(g)) for g in gs]
    assert all(b < a for a, b in zip(xs, xs[1:]))
    assert xs[-1] > 1 / 3


def test_areas_have_rhombus_pattern():
    for g in (Fraction(1, 2), Fraction(2), Fraction(-4)):
        A = oriented_areas(R.embed(g).as_array())
        assert A[0] == pytest.approx(A[1], abs=1e-14)
        assert A[2] == pytest.approx(-A[0], abs=1e-14)
        assert A[3] == pytest.approx(-A[0], abs=1e-14)


def test_families_and_certification():
    (sq,) = R.enumerate_families(1)
    assert (sq.family, sq.x_squared, sq.certified) == ("A", 1, True)
    assert sq.side_ratio_sq == Fraction(1, 2)
    assert sq.side_ratio_conflict  # closed-form side ratio g + 1 = 2 disagrees with (1 + x^2) / 4
    (b,) = R.enumerate_families(-4)
    assert (b.family, b.x_squared, b.certified) == ("B", Fraction(1, 11), False)
    (a,) = R.enumerate_families(2)
    assert (a.family, a.x_squared, a.certified) == ("A", Fraction(5, 7), False)
    assert R.enumerate_families(-2) == []


def test_family_json():
    obj = json.loads(json.dumps(R.enumerate_families(1)[0].to_json()))
    assert obj["certified"] is True and obj["family"] == "A"


def test_sweep_rows():
    rows = R.sweep_rows(-5, 3, 5)
    assert [r["gamma4"] for r in rows] == [-5, -3, -1, 1, 3]
    assert [r["family"] for r in rows] == ["B", "", "", "A", "A"]
    assert [r["certified"] for r in rows] == [False, False, False, True, False]
    assert rows[0]["in_stated_interval"] and not rows[4]["in_stated_interval"]
    assert set(rows[0]) == set(R.SWEEP_COLUMNS)
