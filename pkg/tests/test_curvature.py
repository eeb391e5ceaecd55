import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subdirac.clifford import Dims
from subdirac.curvature import (BoundaryPoint, CurvaturePoint, InputError, constant_curvature,
                                flat_point, invariants, project_riemann_symmetries,
                                random_boundary_point, random_point, riemann_symmetry_defects,
                                rfperp_norm_sq)
from subdirac.heat import build_E
from subdirac.clifford import mul, trace

D12 = Dims(1, 2)


def test_projection_examples():
    c = constant_curvature(1.0, D12)
    assert np.allclose(project_riemann_symmetries(c.riemann), c.riemann, atol=1e-12)
    assert not np.any(project_riemann_symmetries(np.zeros((4,) * 4)))
    r = project_riemann_symmetries(np.random.default_rng(7).standard_normal((4,) * 4))
    assert max(riemann_symmetry_defects(r).values()) <= 1e-12


@given(st.integers(0, 10 ** 6), st.sampled_from([4, 6]))
@settings(max_examples=30, deadline=None)
def test_projection_idempotent(seed, m):
    t = np.random.default_rng(seed).standard_normal((m,) * 4)
    once = project_riemann_symmetries(t)
    assert np.abs(project_riemann_symmetries(once) - once).max() <= 1e-12


def test_random_point_deterministic():
    a, b = random_point(3, D12), random_point(3, D12)
    assert np.array_equal(a.riemann, b.riemann) and np.array_equal(a.rfperp, b.rfperp)
    assert a.symmetric()
    r = a.rfperp
    assert np.array_equal(r, -r.transpose(1, 0, 2, 3))
    assert np.array_equal(r, -r.transpose(0, 1, 3, 2))


def test_constant_curvature_invariants():
    for kappa in (1.0, 2.0, -3.0):
        inv = invariants(constant_curvature(kappa, D12))
        assert inv.r_M == pytest.approx(12 * kappa)
        assert inv.ric_sq == pytest.approx(36 * kappa ** 2)
        assert inv.riem_sq == pytest.approx(24 * kappa ** 2)
        assert inv.rfperp_norm_sq == 0
    flat = invariants(flat_point(D12))
    assert flat.r_M == flat.ric_sq == flat.riem_sq == flat.rfperp_norm_sq == 0


@pytest.mark.parametrize("d", [Dims(1, 2), Dims(1, 4), Dims(2, 2)], ids=str)
def test_rfperp_norm_matches_potential_blocks(d):
    for seed in range(10):
        c = random_point(seed, d)
        e = build_E(c)
        blocks = sum(float(trace(mul(x, x))) for x in (e.I1, e.I2, e.I3))
        assert rfperp_norm_sq(c) == pytest.approx(16 / d.rank * blocks, rel=1e-9)


def test_input_validation():
    with pytest.raises(InputError):
        CurvaturePoint(D12, np.zeros((3,) * 4), np.zeros((4, 4, 2, 2)))
    with pytest.raises(InputError):
        BoundaryPoint(flat_point(D12), np.array([[0, 1, 0], [0, 0, 0], [0, 0, 0]]))
    b = random_boundary_point(1, D12)
    assert b.L.shape == (3, 3) and np.allclose(b.L, b.L.T)
