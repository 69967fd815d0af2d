import math

import numpy as np
import pytest

import bjorth as bj
from bjorth.errors import (
    EmptyParts,
    GridTooCoarse,
    MonotonicityViolation,
    NotRadonPlane,
)

from conftest import random_nonzero

DJ = bj.DayJames(3.0, 1.5)
L2 = bj.Lp(2, 2.0)


@pytest.fixture(scope="module")
def dj_map():
    return bj.build_preserver(DJ, 1024)


# ---------------------------------------------------------------------------
# Independent oracle: the pairing angle solves f(x(t)) = 0 for the (2-D)
# support functional f, whose root is analytically perpendicular to f.


def analytic_pairing_angle(plane, theta):
    f = plane.support_set(bj.unit_vector_at_angle(plane, theta))[0]
    return math.atan2(f[1], f[0]) + math.pi / 2


# ---------------------------------------------------------------------------
# Pairing solve.


def test_solve_eta_endpoints_exact():
    assert bj.solve_eta(DJ, 0.0) == math.pi / 2
    assert bj.solve_eta(DJ, math.pi / 2) == math.pi


def test_solve_eta_euclid_quarter_turn():
    assert bj.solve_eta(L2, math.pi / 4) == pytest.approx(3 * math.pi / 4, abs=1e-10)


def test_solve_eta_dayjames_frozen_values():
    # Diagonal symmetry of the Day-James plane pins the diagonal pairing.
    assert bj.solve_eta(DJ, math.pi / 4) == pytest.approx(3 * math.pi / 4, abs=1e-10)
    # Bisection value frozen at tolerance 1e-12; cross-checked two ways below.
    e6 = bj.solve_eta(DJ, math.pi / 6)
    assert e6 == pytest.approx(1.89254688119154, abs=1e-9)
    assert e6 == pytest.approx(analytic_pairing_angle(DJ, math.pi / 6), abs=1e-10)
    y1 = bj.unit_vector_at_angle(DJ, math.pi / 6)
    y2 = bj.unit_vector_at_angle(DJ, e6)
    assert bj.is_bj_orthogonal_oracle(DJ, y1, y2)


def test_solve_eta_matches_analytic_perp_on_grid():
    for theta in np.linspace(0.01, math.pi / 2 - 0.01, 50):
        assert bj.solve_eta(DJ, float(theta)) == pytest.approx(
            analytic_pairing_angle(DJ, float(theta)), abs=1e-10
        )


def test_solve_eta_rejects_non_radon_planes():
    with pytest.raises(NotRadonPlane):
        bj.solve_eta(bj.Lp(2, 3.0), 0.3)
    with pytest.raises(NotRadonPlane):
        bj.solve_eta(bj.DayJames(3.0, 2.0), 0.3)


# ---------------------------------------------------------------------------
# Table construction.


def test_build_rejects_coarse_grid():
    with pytest.raises(GridTooCoarse):
        bj.build_preserver(DJ, 16)


def test_table_invariants(dj_map):
    table = dj_map.eta
    assert len(table.grid) == 1025
    assert abs(table.values[0] - math.pi / 2) <= 1e-10
    assert abs(table.values[-1] - math.pi) <= 1e-10
    assert np.all(np.diff(table.values) > 0)
    assert float(table.residuals.max()) <= 1e-8
    # Node pairs are orthogonal, and mutually so (the Radon cross-check).
    # The coarser mutual margin absorbs the Hoelder amplification of the
    # one-ulp angle quantization near the axes for exponents below two.
    for t, e in zip(table.grid[::64], table.values[::64]):
        y1 = bj.unit_vector_at_angle(DJ, float(t))
        y2 = bj.unit_vector_at_angle(DJ, float(e))
        assert bj.is_bj_orthogonal(DJ, y1, y2, margin=1e-8)
        assert bj.is_mutually_orthogonal(DJ, y1, y2, margin=1e-5)


def test_table_monotonicity_enforced(dj_map):
    values = dj_map.eta.values.copy()
    values[100], values[200] = values[200], values[100]
    with pytest.raises(MonotonicityViolation):
        bj.EtaTable(grid=dj_map.eta.grid, values=values,
                    residuals=dj_map.eta.residuals, plane=DJ)


def test_table_csv_round_trip(tmp_path, dj_map):
    path = tmp_path / "eta.csv"
    dj_map.eta.to_csv(path)
    loaded = bj.EtaTable.from_csv(path, DJ)
    np.testing.assert_array_equal(loaded.grid, dj_map.eta.grid)
    np.testing.assert_array_equal(loaded.values, dj_map.eta.values)
    np.testing.assert_array_equal(loaded.residuals, dj_map.eta.residuals)


def test_euclid_build_is_identity_on_unit_vectors():
    pm = bj.build_preserver(L2, 64)
    for theta in np.linspace(0.0, 2 * math.pi, 37):
        v = np.array([math.cos(theta), math.sin(theta)])
        assert np.max(np.abs(pm.apply(v) - v)) <= 1e-9


# ---------------------------------------------------------------------------
# Applying the map.


def test_apply_zero_maps_to_zero(dj_map):
    np.testing.assert_array_equal(dj_map.apply([0.0, 0.0]), [0.0, 0.0])
    np.testing.assert_array_equal(dj_map.apply_inverse([0.0, 0.0]), [0.0, 0.0])


def test_apply_preserves_norm(dj_map):
    w = bj.apply_preserver(dj_map, [3.0, 4.0])
    assert DJ.norm(w) == pytest.approx(5.0, rel=1e-9)
    rng = np.random.default_rng(2)
    for _ in range(200):
        v = random_nonzero(L2, rng)
        assert DJ.norm(dj_map.apply(v)) == pytest.approx(L2.norm(v), rel=1e-9)


def test_apply_is_exactly_odd(dj_map):
    rng = np.random.default_rng(4)
    for _ in range(100):
        v = random_nonzero(L2, rng)
        np.testing.assert_array_equal(dj_map.apply(-v), -dj_map.apply(v))


def test_apply_is_homogeneous(dj_map):
    rng = np.random.default_rng(6)
    for _ in range(100):
        v = random_nonzero(L2, rng)
        c = float(rng.uniform(0.1, 10.0)) * float(rng.choice([-1.0, 1.0]))
        err = DJ.norm(dj_map.apply(c * v) - c * dj_map.apply(v))
        assert err <= 1e-12 * abs(c) * L2.norm(v)


def test_apply_continuous_across_quadrant_seams(dj_map):
    for seam in (math.pi / 2, math.pi, 3 * math.pi / 2, 0.0):
        lo = dj_map.apply([math.cos(seam - 1e-9), math.sin(seam - 1e-9)])
        hi = dj_map.apply([math.cos(seam + 1e-9), math.sin(seam + 1e-9)])
        assert np.max(np.abs(hi - lo)) <= 1e-7


def test_round_trip_inverse(dj_map):
    rng = np.random.default_rng(8)
    for _ in range(1000):
        v = random_nonzero(L2, rng)
        np.testing.assert_allclose(dj_map.apply_inverse(dj_map.apply(v)), v, atol=1e-8)


def test_unit_sphere_bijection(dj_map):
    rng = np.random.default_rng(9)
    for _ in range(1000):
        w = random_nonzero(DJ, rng)
        w = w / DJ.norm(w)
        back = dj_map.apply(dj_map.apply_inverse(w))
        np.testing.assert_allclose(back, w, atol=1e-8)


def test_grid_node_pairs_map_to_orthogonal_images(dj_map):
    # x(t) and x(t + pi/2) are orthogonal in the source; images must be too.
    rng = np.random.default_rng(10)
    for _ in range(300):
        t = float(rng.uniform(0.0, 2 * math.pi))
        x = np.array([math.cos(t), math.sin(t)])
        y = np.array([-math.sin(t), math.cos(t)])
        assert bj.is_bj_orthogonal(DJ, dj_map.apply(x), dj_map.apply(y), margin=1e-8)


# ---------------------------------------------------------------------------
# Sum composition.


def test_compose_identity_parts_is_identity():
    sm = bj.compose_inf_sum([bj.IdentityMap(L2), bj.IdentityMap(bj.LInf(1))])
    v = np.array([1.0, 2.0, 3.0])
    np.testing.assert_array_equal(sm.apply(v), v)
    np.testing.assert_array_equal(sm.apply_inverse(v), v)
    assert sm.source == bj.InfSum((L2, bj.LInf(1)))


def test_compose_preserves_max_norm(dj_map):
    sm = bj.compose_inf_sum([dj_map, bj.IdentityMap(bj.LInf(2))])
    rng = np.random.default_rng(12)
    for _ in range(200):
        v = random_nonzero(sm.source, rng)
        assert sm.target.norm(sm.apply(v)) == pytest.approx(sm.source.norm(v), rel=1e-9)


def test_compose_requires_two_parts(dj_map):
    with pytest.raises(EmptyParts):
        bj.compose_inf_sum([dj_map])


# ---------------------------------------------------------------------------
# Verification sweeps (small sizes here; full sizes in the acceptance suite).


def test_verify_identity_map_passes():
    rep = bj.verify_preserver(bj.IdentityMap(L2), 1000, seed=1)
    assert rep.passed and rep.disagreements == 0


def test_verify_dayjames_map_passes(dj_map):
    rep = bj.verify_preserver(dj_map, 1000, seed=1)
    assert rep.passed
    assert rep.orth_disagreements == 0 and rep.acute_disagreements == 0
    assert rep.max_norm_error <= 1e-9
    assert rep.max_homog_error <= 1e-12


def test_verify_detects_swapped_table_entries():
    bad = bj.build_preserver(DJ, 1024)
    values = bad.eta.values
    values[300], values[700] = values[700], values[300]
    rep = bj.verify_preserver(bad, 2000, seed=7)
    assert not rep.passed
    assert rep.orth_disagreements >= 1


def test_verify_report_is_deterministic(dj_map):
    a = bj.verify_preserver(dj_map, 200, seed=5).to_dict()
    b = bj.verify_preserver(dj_map, 200, seed=5).to_dict()
    assert a == b
    assert set(a) >= {
        "samples", "disagreements", "boundary_excluded", "max_norm_error",
        "max_homog_error", "continuity_modulus", "seed", "pass",
    }
