import json
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from vortex_atlas.vortexcore import (
    PAIRS,
    CollisionError,
    MutualDistanceState,
    PlanarConfiguration,
    SymmetricDegeneracy,
    Vorticities,
    angular_velocity,
    cayley_menger,
    certify,
    distance_relation_residual,
    dziobek_residuals,
    eliminated_lambda_prime,
    oriented_areas,
    quantities,
    recover_gamma4,
    to_mutual_distances,
    velocities,
    vorticity_ratios,
)

from oracles import random_configs

SQ3 = math.sqrt(3)
# equilateral triangle of unit vortices around a central vortex: an equilibrium for every G4
CENTERED = ((1.0, 0.0), (-0.5, SQ3 / 2), (-0.5, -SQ3 / 2), (0.0, 0.0))


def test_vorticities_invariants():
    v = Vorticities.three_unit(Fraction(1, 2))
    assert v.total == Fraction(7, 2)
    assert v.angular_momentum == 3 + 3 * Fraction(1, 2)
    with pytest.raises(ValueError):
        Vorticities((1, 2, 3))


def test_collision_rejected():
    with pytest.raises(CollisionError):
        PlanarConfiguration(((0, 0), (0, 0), (1, 0), (2, 3)), (1, 1, 1, 1))


def test_json_round_trip():
    cfg = PlanarConfiguration(CENTERED, (1, 1, 1, Fraction(1, 2)))
    obj = json.loads(json.dumps(cfg.to_json()))
    back = PlanarConfiguration.from_json(obj)
    assert np.allclose(back.as_array(), cfg.as_array())
    assert float(back.vorticities.gamma4) == 0.5


def test_square_quantities_exact():
    cfg = PlanarConfiguration(((1, 0), (0, 1), (-1, 0), (0, -1)), (1, 1, 1, 1))
    q = quantities(cfg)
    assert q.center_of_vorticity == (0, 0)
    assert q.moment_of_inertia == 2
    assert angular_velocity(q) == Fraction(-6, 4)


def test_velocities_of_centered_triangle_are_rotation():
    cfg = PlanarConfiguration(CENTERED, (1, 1, 1, 2))
    v = velocities(cfg)
    z = cfg.as_array()
    omega = v[0, 1] / z[0, 0]
    assert np.allclose(v, omega * np.stack([-z[:, 1], z[:, 0]], axis=1))
    # ring of three unit vortices at radius 1 turns at (3 - 1) / 2, the centre adds G4
    assert omega == pytest.approx(1.0 + 2.0)


def test_certify_relative_equilibrium():
    cert = certify(PlanarConfiguration(CENTERED, (1, 1, 1, 2)))
    assert cert.verdict and cert.kind == "relative"
    assert cert.lam == pytest.approx(-3.0)
    assert cert.center == pytest.approx((0.0, 0.0), abs=1e-12)
    assert cert.residual_motion < 1e-14
    assert cert.residual_dziobek < 1e-12


def test_certify_absolute_equilibrium():
    cert = certify(PlanarConfiguration(CENTERED, (1, 1, 1, -1)))
    assert cert.kind == "absolute" and cert.verdict


def test_certify_rejects_generic_configuration():
    cfg = PlanarConfiguration(((0, 0), (1, 0), (0.3, 1.2), (-0.7, 0.4)), (1, 1, 1, 1))
    assert not certify(cfg).verdict
    with pytest.raises(ValueError):
        certify(cfg, tol=0)


def test_areas_sum_to_zero_and_cayley_menger_vanishes():
    for z in random_configs(100, seed=1):
        A = oriented_areas(z)
        assert abs(sum(A)) < 1e-12
        rho = to_mutual_distances(PlanarConfiguration(z, (1, 1, 1, 1))).rho
        assert abs(cayley_menger(rho)) < 1e-9 * max(rho) ** 3


def test_exact_areas_and_cayley_menger():
    pts = ((Fraction(0), Fraction(0)), (Fraction(3), Fraction(0)), (Fraction(1), Fraction(2)), (Fraction(-1), Fraction(5, 2)))
    s = to_mutual_distances(PlanarConfiguration(pts, (1, 1, 1, 1)))
    assert sum(s.areas) == 0
    assert s.cayley_menger == 0
    assert all(isinstance(x, Fraction) for x in s.s)


def test_cayley_menger_gradient_matches_area_products():
    # dS/drho_ij = -32 A_i A_j on planar configurations
    for z in random_configs(100, seed=2):
        cfg = PlanarConfiguration(z, (1, 1, 1, 1))
        rho = list(to_mutual_distances(cfg).rho)
        A = oriented_areas(z)
        for n, (i, j) in enumerate(PAIRS):
            h = 1e-6 * max(rho)
            up, dn = list(rho), list(rho)
            up[n] += h
            dn[n] -= h
            fd = (cayley_menger(up) - cayley_menger(dn)) / (2 * h)
            want = -32 * A[i] * A[j]
            assert abs(fd - want) <= 1e-6 * max(abs(want), 1e-3 * max(rho) ** 2)


@given(st.floats(0, 2 * math.pi), st.floats(0.05, 20), st.floats(-5, 5), st.floats(-5, 5))
@settings(max_examples=40, deadline=None)
def test_certificate_invariant_under_similarity(angle, scale, dx, dy):
    base = PlanarConfiguration(CENTERED, (1, 1, 1, Fraction(3, 2)))
    moved = base.transformed(angle, scale, (dx, dy))
    a, b = certify(base), certify(moved)
    assert a.verdict and b.verdict and a.kind == b.kind
    assert b.lam * scale**2 == pytest.approx(a.lam, rel=1e-9)
    bad = PlanarConfiguration(((0, 0), (1, 0), (0.3, 1.2), (-0.7, 0.4)), (1, 1, 1, 1))
    assert not certify(bad.transformed(angle, scale, (dx, dy))).verdict


def test_dziobek_relations_on_equilibrium():
    cfg = PlanarConfiguration(CENTERED, (1, 1, 1, 2))
    cert = certify(cfg)
    s = to_mutual_distances(cfg, cert.lambda_prime)
    assert max(abs(r) for r in dziobek_residuals(s)) < 1e-12
    assert abs(distance_relation_residual(s)) < 1e-12


def test_vorticity_ratios_recover_gamma4():
    from vortex_atlas.kite import kite_configuration, solve_kite

    sol = [s for s in solve_kite(Fraction(1, 2)) if s.cls == "concave-interior"][0]
    cfg = kite_configuration(sol.k, sol.l, 0.5)
    s = to_mutual_distances(cfg, certify(cfg).lambda_prime)
    assert recover_gamma4(s) == pytest.approx(0.5, rel=1e-8)


def test_ratio_degeneracy_without_lambda():
    # square: every difference quotient is 0/0
    s = MutualDistanceState((Fraction(2), Fraction(4), Fraction(2), Fraction(2), Fraction(4), Fraction(2)))
    with pytest.raises(SymmetricDegeneracy):
        vorticity_ratios(s)
    # lambda' = lambda / G = (-6 / 4) / 4 for the unit square of side sqrt2
    assert eliminated_lambda_prime(s) == Fraction(-3, 8)
    assert vorticity_ratios(s.with_lambda_prime(Fraction(-3, 8)))


def test_translation_certificate():
    # G = 0 collinear-free translation found by the special-case search (frozen coordinates)
    pts = ((0.0, 0.0), (1.0, 0.0), (0.5, -0.1377346320489896), (0.5, 0.5240900821545783))
    cert = certify(PlanarConfiguration(pts, (1, 1, 1, -3)))
    assert cert.kind == "translation" and cert.verdict
    assert cert.translation_velocity is not None
