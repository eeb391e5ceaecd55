import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subdirac.clifford import Dims, mul, trace
from subdirac.curvature import (BoundaryPoint, InputError, constant_curvature, flat_point,
                                random_boundary_point, random_point,
                                with_scalar_curvature)
from subdirac.heat import (CutoffMoments, HeatCoefficients, action_asymptotics, base_prefactor,
                           boundary_prefactor, boundary_rnormal_coefficient, build_E, build_Omega,
                           cutoff_function, cutoff_moments, density_boundary_formula,
                           density_boundary_generic, density_closed_formula,
                           density_closed_generic, gilkey_prefactor, heat_coefficients,
                           trace_omega_sq)
from subdirac.oracle import build_rep, rep_of

DIMS = [Dims(1, 2), Dims(1, 4), Dims(2, 2)]
D12 = Dims(1, 2)


def test_flat_point_has_no_potential_or_curvature():
    c = flat_point(D12)
    assert build_E(c).element.is_zero()
    om = build_Omega(c)
    assert all(om[i, j].is_zero() for i in range(4) for j in range(4))
    assert density_closed_generic(c, 4) == 0
    assert density_closed_formula(c, 4) == 0


@pytest.mark.parametrize("d", DIMS, ids=str)
def test_prefactor_forms_agree(d):
    assert gilkey_prefactor(d) == pytest.approx(base_prefactor(d), rel=1e-14)


@pytest.mark.parametrize("d", DIMS, ids=str)
def test_potential_and_two_form(d):
    rep = build_rep(d)
    for seed in range(5):
        c = random_point(seed, d)
        e = build_E(c).element
        assert trace(e) == -d.rank * c.r_M / 4
        me = rep_of(e, rep)
        assert np.abs(me - me.conj().T).max() <= 1e-10
        assert float(trace(mul(e, e))) >= 0
        om = build_Omega(c)
        for i in range(d.m):
            for j in range(d.m):
                assert (om[i, j] + om[j, i]).is_zero()
                mo = rep_of(om[i, j], rep)
                assert np.abs(mo + mo.conj().T).max() <= 1e-10
        assert -trace_omega_sq(c) >= 0


@pytest.mark.parametrize("d", DIMS, ids=str)
def test_closed_densities(d):
    for seed in range(10):
        c = random_point(seed, d)
        assert density_closed_generic(c, 0) == pytest.approx(base_prefactor(d))
        assert density_closed_generic(c, 2) == pytest.approx(-c.r_M / 12 * base_prefactor(d), rel=1e-9)
        assert density_closed_generic(c, 4) == pytest.approx(density_closed_formula(c, 4), rel=1e-9)


def test_constant_curvature_fixture():
    for kappa in (1.0, -2.0):
        c = constant_curvature(kappa, D12)
        expected = 66 * kappa ** 2 / (360 * 2 * math.pi ** 2)
        assert density_closed_generic(c, 4) == pytest.approx(expected, rel=1e-12)
        assert density_closed_formula(c, 4) == pytest.approx(expected, rel=1e-12)


def test_total_derivatives_need_laplacian():
    c = constant_curvature(1.0, D12)
    with pytest.raises(InputError):
        density_closed_generic(c, 4, include_total_derivatives=True)
    r = random_point(2, D12)
    with_td = density_closed_generic(r, 4, include_total_derivatives=True)
    # the divergence terms -12 R_ijij;kk + 60 tr E;kk with R_ijij = -r_M, tr E = -rank r_M / 4
    # (gilkey_prefactor carries the rank)
    extra = gilkey_prefactor(D12) / 360 * (12 - 15) * r.scalar_laplacian
    assert with_td - density_closed_generic(r, 4) == pytest.approx(extra, rel=1e-12)


def test_boundary_examples():
    b = random_boundary_point(4, D12)
    pref = boundary_prefactor(D12) * D12.rank
    assert density_boundary_formula(b, 1)[1] == pytest.approx(-0.25 * pref)
    base = base_prefactor(D12)
    assert density_boundary_formula(b, 2)[1] == pytest.approx(4 * b.L_trace / 12 * base)
    flat = BoundaryPoint(flat_point(D12), np.zeros((3, 3)), 0.0, 0.0)
    assert density_boundary_generic(flat, 3) == (0.0, 0.0)
    # only r_M nonzero: a_3 = -1/4 (4pi)^(-3/2) 2^(p+q) (-8 r_M) / 96
    only_r = BoundaryPoint(with_scalar_curvature(flat_point(D12), 2.0), np.zeros((3, 3)), 0.0, 0.0)
    assert density_boundary_formula(only_r, 3)[1] == pytest.approx(-0.25 * pref * (-8 * 2.0) / 96)


@pytest.mark.parametrize("d", DIMS, ids=str)
def test_boundary_generic_equals_formula(d):
    rn = boundary_rnormal_coefficient(d)["generic"]
    for seed in range(10):
        b = random_boundary_point(seed, d)
        for k in range(4):
            g, f = density_boundary_generic(b, k), density_boundary_formula(b, k)
            assert g == pytest.approx(f, rel=1e-9, abs=1e-300)
        g = density_boundary_generic(b, 4)
        assert g == pytest.approx(density_boundary_formula(b, 4, r_normal_coeff=rn), rel=1e-9)
        printed = density_boundary_formula(b, 4)
        assert printed[1] != pytest.approx(g[1], rel=1e-9)


def test_rnormal_coefficients():
    assert boundary_rnormal_coefficient(D12) == {"generic": 12.0, "printed": -51.0,
                                                 "with_interior_divergences": 15.0}


def test_boundary_missing_scalars():
    c = random_point(0, D12)
    b = BoundaryPoint(c, np.eye(3))
    with pytest.raises(InputError):
        density_boundary_generic(b, 4)
    with pytest.raises(InputError):
        heat_coefficients(c, orders=(1,))


def test_named_moments():
    m = cutoff_moments("characteristic")
    assert (m.F4, m.F2, m.F0) == (0.5, 1.0, 1.0)
    assert m.F3 == pytest.approx(4 / (3 * math.sqrt(math.pi)), rel=1e-12)
    assert cutoff_moments("zero") == CutoffMoments(0.0, 0.0, 0.0, 0.0, 0.0)
    for name in ("characteristic", "linear"):
        quad = cutoff_moments(cutoff_function(name))
        closed = cutoff_moments(name)
        for k in range(5):
            assert quad[k] == pytest.approx(closed[k], rel=1e-10)


def test_sampled_moments_and_support_warning():
    s = np.linspace(0.0, 1.0, 2001)
    m = cutoff_moments((s, 1.0 - s))
    assert m.F4 == pytest.approx(cutoff_moments("linear").F4, rel=1e-8)
    with warnings.catch_warnings(record=True) as w:
        warnings.simplefilter("always")
        cutoff_moments(lambda x: math.exp(-x), support=2.0)
    assert any("support" in str(x.message) for x in w)


def test_action_examples():
    zero = HeatCoefficients({0: 0.0, 2: 0.0, 4: 0.0})
    assert action_asymptotics(zero, cutoff_moments("characteristic"), 10.0) == 0
    hc = heat_coefficients(flat_point(D12), orders=(0,))
    val = action_asymptotics(hc, cutoff_moments("sharp"), 10.0)
    assert val == pytest.approx(1e4 / (4 * math.pi ** 2), rel=1e-14)
    only_a1 = HeatCoefficients({k: 0.0 for k in range(5)}, {1: 3.0}, area=1.0)
    mom = cutoff_moments("characteristic")
    assert action_asymptotics(only_a1, mom, 7.0) == pytest.approx(7.0 ** 3 * mom.F3 * 3.0)


@given(st.lists(st.floats(-5, 5), min_size=5, max_size=5),
       st.lists(st.floats(-5, 5), min_size=5, max_size=5), st.floats(0.5, 20))
@settings(max_examples=50, deadline=None)
def test_action_linear(a, f, lam):
    coeffs = HeatCoefficients(dict(enumerate(a)), {1: a[1], 3: a[3]}, area=1.0)
    mom = CutoffMoments(*f)
    doubled = HeatCoefficients({k: 2 * v for k, v in enumerate(a)}, {1: 2 * a[1], 3: 2 * a[3]},
                               area=1.0)
    base = action_asymptotics(coeffs, mom, lam)
    assert action_asymptotics(doubled, mom, lam) == pytest.approx(2 * base, rel=1e-12, abs=1e-9)
    assert action_asymptotics(coeffs, CutoffMoments(*[2 * x for x in f]), lam) == pytest.approx(
        2 * base, rel=1e-12, abs=1e-9)
