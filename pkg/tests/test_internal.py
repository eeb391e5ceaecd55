import math

import numpy as np
import pytest

from subdirac.clifford import DimensionError, Dims, mul, trace
from subdirac.curvature import constant_curvature, flat_point, random_point
from subdirac.heat import build_E, trace_omega_sq
from subdirac.internal import (InternalSpace, SMParams, build_E_phi, generic_sm_densities,
                               random_internal_space, sm_coefficients, sm_trace_inputs,
                               trace_E_phi, trace_E_phi_sq, trivial_internal_space,
                               twisted_omega_trace)
from subdirac.oracle import build_rep

D12, D22 = Dims(1, 2), Dims(2, 2)
REP12 = build_rep(D12)


def test_trivial_inputs():
    c = flat_point(D12)
    e = build_E_phi(c, trivial_internal_space(2, 4), REP12)
    assert not np.any(e.matrix)
    lam = 0.7
    e = build_E_phi(c, trivial_internal_space(2, 4, lam * np.eye(2)), REP12)
    assert np.allclose(e.matrix, -lam ** 2 * np.eye(16))
    cmp = trace_E_phi(c, trivial_internal_space(2, 4, lam * np.eye(2)), REP12)
    assert cmp.oracle == pytest.approx(-16 * lam ** 2)


def test_self_adjoint_seed_11():
    s = random_internal_space(11, 2, 4)
    assert s.check()
    m = build_E_phi(random_point(11, D12), s, REP12).matrix
    assert np.abs(m - m.conj().T).max() <= 1e-10


def test_requires_m4_unless_generalized():
    with pytest.raises(DimensionError):
        build_E_phi(random_point(0, D22), random_internal_space(0, 2, 6))
    m = build_E_phi(random_point(0, D22), random_internal_space(0, 2, 6), generalized=True).matrix
    assert np.abs(m - m.conj().T).max() <= 1e-10


def test_reduces_to_bare_potential():
    c = random_point(3, D12)
    ephi = build_E_phi(c, trivial_internal_space(1, 4), REP12).matrix
    e = build_E(c).element
    assert np.trace(ephi).real == pytest.approx(float(trace(e)), rel=1e-12)
    assert np.trace(ephi @ ephi).real == pytest.approx(float(trace(mul(e, e))), rel=1e-12)


def test_trace_sign_resolved_by_oracle():
    for seed in range(5):
        c = random_point(seed, D12)
        cmp = trace_E_phi(c, trivial_internal_space(2, 4), REP12)
        assert cmp.matching == ["derived"]


def test_flat_phi_and_commutators():
    s = random_internal_space(4, 3, 4, parts=("phi", "commutators"))
    cmp = trace_E_phi_sq(flat_point(D12), s, REP12)
    expected = 8 * (s.tr_phi_quart() + s.tr_commutator_sq())
    assert cmp.oracle == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("d", [D12, D22], ids=str)
@pytest.mark.parametrize("parts", [(), ("phi",), ("gauge",), ("commutators",),
                                   ("phi", "gauge", "commutators")])
def test_trace_sq_term_isolated(d, parts):
    rep = build_rep(d)
    for seed in range(5):
        s = random_internal_space(seed, 2 + seed % 2, d.m, parts)
        cmp = trace_E_phi_sq(random_point(seed, d), s, rep, generalized=d.m != 4)
        assert cmp.matches("formula"), cmp


def test_twisted_omega():
    c = random_point(1, D12)
    cmp = twisted_omega_trace(c, trivial_internal_space(3, 4), REP12)
    assert cmp.oracle == pytest.approx(3 * trace_omega_sq(c), rel=1e-12)
    s = random_internal_space(2, 2, 4, parts=("gauge",))
    cmp = twisted_omega_trace(flat_point(D12), s, REP12)
    assert cmp.oracle == pytest.approx(8 * s.tr_gauge_sq(), rel=1e-12)
    assert twisted_omega_trace(c, random_internal_space(2, 3, 4), REP12).matches("formula")


def test_sm_trace_inputs():
    assert sm_trace_inputs(SMParams()) == sm_trace_inputs(SMParams())
    t = sm_trace_inputs(SMParams(phi_sq=1, a=1))
    assert t.phi_sq == 4
    assert sm_trace_inputs(SMParams(g1=1, norm_B_sq=1)).gauge == 16
    z = sm_trace_inputs(SMParams())
    assert (z.gauge, z.commutator, z.phi_sq, z.phi_quart) == (0, 0, 0, 0)


def test_sm_examples():
    base = 1 / (2 * math.pi ** 2)
    zero = sm_coefficients(SMParams())
    assert zero.a0 == 96 * base and zero.a2 == 0 and zero.a4 == 0
    unit = sm_coefficients(SMParams(rfperp_norm_sq=1.0))
    assert unit.a4 == 2 * base == unit.i_new
    with pytest.raises(ValueError):
        SMParams(phi_sq=-1)


def test_sm_printed_audits():
    terms = {(a["order"], a["term"]) for a in sm_coefficients(SMParams(a=2.0)).audits}
    assert terms == {(2, "r_M"), (4, "r_M^2"), (4, "|D phi|^2")}


def test_sm_affine_in_constants():
    base = SMParams(r_M=0.3, phi_sq=1.1, phi_quart=0.7, dphi_sq=0.4, g1=0.5, norm_B_sq=2.0)
    for name in ("a", "b", "c", "d", "e"):
        vals = [sm_coefficients(SMParams(**{**base.__dict__, name: x})).a4 for x in (0.0, 1.0, 2.0)]
        assert vals[2] - vals[1] == pytest.approx(vals[1] - vals[0], rel=1e-12, abs=1e-15)
    for g in ("g1", "g2", "g3"):
        norm = {"g1": "norm_B_sq", "g2": "norm_F1_sq", "g3": "norm_G_sq"}[g]
        v = [sm_coefficients(SMParams(**{**base.__dict__, g: x, norm: 1.0})).a4 for x in (0, 1, 2)]
        assert v[2] - v[0] == pytest.approx(4 * (v[1] - v[0]), rel=1e-12)


def test_sm_reassembly_matches_derived():
    rng = np.random.default_rng(0)
    for _ in range(20):
        vals = {k: float(abs(rng.standard_normal())) for k in
                ("a", "b", "c", "d", "e", "g1", "g2", "g3", "norm_G_sq", "norm_F1_sq",
                 "norm_B_sq", "phi_sq", "phi_quart", "dphi_sq", "ric_sq", "riem_sq",
                 "rfperp_norm_sq")}
        p = SMParams(r_M=float(rng.standard_normal()), **vals)
        g = generic_sm_densities(p)
        o = sm_coefficients(p, oracle_corrected=True)
        assert g[4] == pytest.approx(o.a4, rel=1e-9)
        assert g[2] == pytest.approx(o.a2, rel=1e-9)


def test_derived_r_squared_coefficient():
    # with only r_M set, the generic a_4 gives 120 r_M^2 / 360 per base unit
    g = generic_sm_densities(SMParams(r_M=1.0))
    assert g[4] * 2 * math.pi ** 2 * 360 == pytest.approx(120, rel=1e-12)


def test_internal_space_validation():
    with pytest.raises(ValueError):
        InternalSpace(2, np.eye(3), np.zeros((4, 4, 2, 2)), np.zeros((4, 2, 2)))
    s = InternalSpace(2, np.array([[0, 1], [0, 0]]), np.zeros((4, 4, 2, 2)), np.zeros((4, 2, 2)))
    assert not s.check()
    assert constant_curvature(0.0, D12).r_M == 0


def test_published_a4_gap_is_only_audited_terms():
    # with r_M = 0 and a = 1 the two audited monomials agree, so printed = generic
    rng = np.random.default_rng(9)
    for _ in range(20):
        vals = {k: float(abs(rng.standard_normal())) for k in
                ("b", "c", "d", "e", "g1", "g2", "g3", "norm_G_sq", "norm_F1_sq", "norm_B_sq",
                 "phi_sq", "phi_quart", "dphi_sq", "ric_sq", "riem_sq", "rfperp_norm_sq")}
        p = SMParams(a=1.0, r_M=0.0, **vals)
        assert generic_sm_densities(p)[4] == pytest.approx(sm_coefficients(p).a4, rel=1e-9)
