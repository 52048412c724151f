import json
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from vortex_atlas import special as S
from vortex_atlas.vortexcore import MutualDistanceState, PlanarConfiguration, to_mutual_distances, velocities

ZERO = (1, 1, 1, -3)
# rigid translations at (1, 1, 1, -3) as (z3, z4) with z1 = 0, z2 = 1 (frozen from the search)
TRANSLATIONS = [
    ((-0.858938, -0.51208), (0.338907, -1.230291)), ((-0.858938, 0.51208), (0.338907, 1.230291)),
    ((0.5, -0.137735), (0.5, 0.52409)), ((0.5, 0.137735), (0.5, -0.52409)),
    ((1.858938, -0.51208), (0.661093, -1.230291)), ((1.858938, 0.51208), (0.661093, 1.230291)),
]


def test_absolute_equilibria_are_stationary():
    for gam in ((1, 1, 1, -1), (2, 3, 1, Fraction(-11, 6))):
        res = S.absolute_equilibria(gam)
        assert res.max_speed < 1e-12
        assert len(res.configurations) == 2
        assert all(c.kind == "absolute" and c.verdict for c in res.certificates)


def test_absolute_pair_is_mirror_image():
    a, b = S.absolute_equilibria((1, 1, 1, -1)).configurations
    for (x, y), (u, v) in zip(a.positions, b.positions):
        assert (x, y) == pytest.approx((u, -v), abs=1e-15)


@given(st.fractions(-5, 5, max_denominator=9), st.fractions(-5, 5, max_denominator=9),
       st.fractions(-5, 5, max_denominator=9))
@settings(max_examples=60, deadline=None)
def test_absolute_equilibria_for_any_zero_momentum(g1, g2, g3):
    # solve L = 0 for G4 when possible: L = P + G4 (g1 + g2 + g3) with P the pair sum
    s = g1 + g2 + g3
    P = g1 * g2 + g1 * g3 + g2 * g3
    if s == 0 or 0 in (g1, g2, g3):
        return
    g4 = -P / s
    if g4 == 0 or g2 + g3 + g4 == 0 or g1 + g3 + g4 == 0:
        return
    res = S.absolute_equilibria((g1, g2, g3, g4))
    scale = max(abs(float(v)) for v in (g1, g2, g3, g4)) * max(
        1 / min(math.dist(p, q) for i, p in enumerate(c.positions) for q in c.positions[i + 1:])
        for c in res.configurations)
    assert res.max_speed < 1e-9 * scale


def test_absolute_preconditions():
    with pytest.raises(S.NecessaryConditionError):
        S.absolute_equilibria((1, 1, 1, 1))
    # with L = 0 the denominators vanish only when two of the three strengths do
    with pytest.raises(S.DegenerateParameterError):
        S.absolute_equilibria((0, 1, 0, 0))


def test_zero_total_shapes_satisfy_distance_system():
    res = S.zero_total_relative_equilibria()
    assert [c.verdict for c in res.certificates] == [True, True]
    for cfg in res.configurations:
        s = to_mutual_distances(cfg)
        sums = S.weighted_sums(s, ZERO)
        r = S.zero_total_residuals(s, sums[0], ZERO)
        scale = max(s.rho) ** 3
        assert max(abs(x) for x in r) < 1e-10 * scale
    tri, kite = res.configurations
    assert S.weighted_sums(to_mutual_distances(tri), ZERO)[0] == pytest.approx(4.0)
    assert kite.positions[2][1] == pytest.approx(-4.403669475041611, abs=1e-10)
    assert kite.positions[3][1] == pytest.approx(-1.4678898250138703, abs=1e-10)
    assert S.weighted_sums(to_mutual_distances(kite), ZERO)[0] == pytest.approx(8 + 4 * math.sqrt(3), rel=1e-10)


def test_random_distances_violate_system():
    rng = np.random.default_rng(3)
    for _ in range(50):
        z = rng.normal(size=(4, 2))
        s = to_mutual_distances(PlanarConfiguration(z, ZERO))
        r = S.zero_total_residuals(s, S.weighted_sums(s, ZERO)[0], ZERO)
        assert max(abs(x) for x in r) > 1e-6


def test_zero_total_residuals_need_zero_total():
    s = MutualDistanceState((1, 1, 1, 1, 1, 1))
    with pytest.raises(S.NecessaryConditionError):
        S.zero_total_residuals(s, 0, (1, 1, 1, 1))


def test_rigid_translations_at_zero_total():
    res = S.rigid_translation_search(ZERO)
    assert len(res.configurations) == 6
    assert all(c.kind == "translation" and c.verdict for c in res.certificates)
    got = [tuple(tuple(round(v, 6) for v in p) for p in c.positions[2:]) for c in res.configurations]
    assert got == TRANSLATIONS
    for cfg in res.configurations:
        assert S.max_velocity_spread(cfg) < 1e-10
        assert np.abs(velocities(cfg)).max() > 1e-3


def test_translation_search_deterministic_across_workers():
    a = S.rigid_translation_search(ZERO, workers=1)
    b = S.rigid_translation_search(ZERO, workers=2)
    assert json.dumps(a.to_json()) == json.dumps(b.to_json())


def test_translation_needs_zero_total():
    with pytest.raises(S.NecessaryConditionError):
        S.rigid_translation_search((1, 1, 1, 1))
