import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ionvit.model import (
    POLE_TOL, Case, MicroscopicParams, ModelParams, blue_poles, effective_params,
    effective_quantities, pole_coupling, response_intensity, steady_state,
)
from ionvit.oracle import build_mean, stability, steady_state_linear

rates = st.floats(0.05, 40.0)
couplings = st.floats(0.0, 30.0)
detunings = st.floats(-40.0, 40.0)
cases = st.sampled_from([Case.RED, Case.BLUE])


@st.composite
def params(draw, case=cases):
    return ModelParams(draw(case), g_a=draw(couplings), g_b=draw(couplings),
                       gamma_a=draw(rates), gamma_b=draw(rates), kappa=draw(st.floats(0.2, 5.0)),
                       chi=draw(st.floats(0.1, 10.0)))


# --- effective_params -------------------------------------------------------

@pytest.mark.parametrize("micro, expected", [
    (MicroscopicParams(1, 1, 1.0, 1.0, 0.1), (0.1, 0.1, 1.0)),
    (MicroscopicParams(4, 9, 0.5, 2.0, 0.05), (0.2, 0.3, 1.0)),
    (MicroscopicParams(100, 100, 1.0, 1.0, 0.1), (1.0, 1.0, 10.0)),
])
def test_effective_params(micro, expected):
    c = effective_params(micro)
    assert (c.g_a, c.g_b, c.chi) == pytest.approx(expected, rel=1e-15)


@pytest.mark.parametrize("kw", [
    dict(n_ions_a=0), dict(n_ions_b=-2), dict(n_ions_a=1.5), dict(lamb_dicke=0.0),
    dict(lamb_dicke=0.31), dict(rabi=0.0), dict(trap_freq=-1.0),
])
def test_microscopic_params_rejects(kw):
    base = dict(n_ions_a=1, n_ions_b=1, drive_amplitude=1.0, rabi=1.0, lamb_dicke=0.1)
    base.update(kw)
    with pytest.raises(ValueError):
        MicroscopicParams(**base)


@pytest.mark.parametrize("kw", [dict(gamma_a=0.0), dict(kappa=-1.0), dict(g_a=-0.1),
                                dict(chi=math.inf), dict(n_vib=-1.0)])
def test_model_params_rejects(kw):
    with pytest.raises(ValueError):
        ModelParams(**kw)


def test_model_params_case_parsing():
    assert ModelParams("BLUE").case is Case.BLUE
    with pytest.raises(ValueError):
        ModelParams("green")


# --- effective_quantities ---------------------------------------------------

def test_effective_quantities_resonant_red():
    q = effective_quantities(ModelParams(Case.RED, 10, 10, 3, 3), 0.0)
    assert q.kappa_eff == pytest.approx(203 / 3, rel=1e-15)
    assert q.delta_eff == 0.0
    assert q.F_A == pytest.approx(103 / 203, rel=1e-14)


def test_F_A_matches_linear_solve():
    # A_s = -chi F_A / (delta - i gamma_a) inverted from the 3x3 solve
    p = ModelParams(Case.RED, 10, 10, 3, 3)
    a_s = steady_state_linear(build_mean(p, 0.0)).a_s
    assert -a_s * (0.0 - 3j) == pytest.approx(103 / 203, rel=1e-13)


@pytest.mark.parametrize("case", list(Case))
def test_effective_quantities_decoupled(case):
    d = np.linspace(-5, 5, 11)
    q = effective_quantities(ModelParams(case, gamma_a=2, gamma_b=3, kappa=1.5), d)
    assert np.all(q.f_a == 0) and np.all(q.f_b == 0)
    np.testing.assert_array_equal(q.F_A, 1.0)
    np.testing.assert_allclose(q.kappa_eff, 1.5, rtol=0, atol=0)
    np.testing.assert_allclose(q.delta_eff, d, rtol=1e-15)


@given(params(case=st.just(Case.RED)), detunings)
def test_primed_identities(p, d):
    red = effective_quantities(p, d)
    blue = effective_quantities(p.with_(case=Case.BLUE), d)
    # the sums cancel the coupling terms, so round-off scales with them
    k_scale = abs(red.kappa_eff) + abs(blue.kappa_eff)
    d_scale = abs(red.delta_eff) + abs(blue.delta_eff)
    assert abs(red.kappa_eff + blue.kappa_eff - 2 * p.kappa) <= 1e-14 * k_scale
    assert abs(red.delta_eff + blue.delta_eff - 2 * d) <= 1e-14 * d_scale
    assert red.kappa_eff >= p.kappa >= blue.kappa_eff


# --- steady_state -----------------------------------------------------------

@pytest.mark.parametrize("case", list(Case))
def test_steady_state_decoupled_lorentzian(case):
    d = np.linspace(-7, 7, 29)
    s = steady_state(ModelParams(case, gamma_a=2.5), d)
    np.testing.assert_allclose(s.a_s, -1 / (d - 2.5j), rtol=1e-15)
    assert np.all(s.b_s == 0) and np.all(s.c_s == 0)


def test_steady_state_fig1a_center(fig1a):
    ia, _ = response_intensity(steady_state(fig1a, 0.0), fig1a.chi)
    assert ia == pytest.approx(float(Fraction(103, 203) ** 2 / 9), rel=1e-13)
    assert ia == pytest.approx(0.02861, abs=1e-5)


def test_blue_pole_flagged_at_ga_2():
    p = ModelParams(Case.BLUE, g_a=2.0, g_b=1.0, gamma_a=5, gamma_b=5)
    s = steady_state(p, np.array([-1.0, 0.0, 1.0]))
    assert list(s.pole) == [False, True, False]
    assert np.isnan(s.a_s[1]) and np.all(np.isfinite(s.a_s[[0, 2]]))
    near = steady_state(p.with_(g_a=2.0 + 1e-6), 0.0)
    assert not near.pole and abs(near.a_s) > 1e3


@given(params(), detunings, st.floats(0.1, 10.0))
def test_linearity_in_chi(p, d, lam):
    s1 = steady_state(p.with_(chi=1.0), d)
    s2 = steady_state(p.with_(chi=lam), d)
    if s1.pole:
        return
    for a, b in [(s1.a_s, s2.a_s), (s1.b_s, s2.b_s), (s1.c_s, s2.c_s)]:
        assert b == pytest.approx(lam * a, rel=1e-12, abs=1e-300)


@given(params(), detunings)
def test_mirror_symmetry(p, d):
    s_p, s_m = steady_state(p, d), steady_state(p, -d)
    if s_p.pole:
        return
    ip, jp = response_intensity(s_p, p.chi)
    im, jm = response_intensity(s_m, p.chi)
    assert im == pytest.approx(ip, rel=1e-12, abs=0)
    assert jm == pytest.approx(jp, rel=1e-12, abs=0)


@given(params(case=st.just(Case.RED)), detunings)
def test_red_closed_form_matches_oracle(p, d):
    closed = steady_state(p, d).as_vector()
    ref = steady_state_linear(build_mean(p, d)).as_vector()
    np.testing.assert_allclose(closed, ref, rtol=1e-10, atol=1e-14 * np.max(np.abs(ref)))


@given(params(case=st.just(Case.BLUE)), detunings)
def test_blue_closed_form_matches_oracle_when_stable(p, d):
    rep = stability(build_mean(p, d))
    if rep.max_real_eig > -1e-3:
        return
    closed = steady_state(p, d).as_vector()
    ref = steady_state_linear(build_mean(p, d)).as_vector()
    np.testing.assert_allclose(closed, ref, rtol=1e-10, atol=1e-14 * np.max(np.abs(ref)))


# --- response_intensity -----------------------------------------------------

def test_response_intensity_lorentz_peak():
    p = ModelParams(gamma_a=5.0)
    ia, ib = response_intensity(steady_state(p, 0.0), p.chi)
    assert (ia, ib) == pytest.approx((0.04, 0.0), rel=1e-15)


def test_response_intensity_independent_of_chi(fig1a):
    d = np.linspace(-20, 20, 41)
    r1 = response_intensity(steady_state(fig1a, d), 1.0)
    r2 = response_intensity(steady_state(fig1a.with_(chi=2.0), d), 2.0)
    np.testing.assert_allclose(r1, r2, rtol=1e-14)


def test_response_intensity_rejects_nonpositive_chi(fig1a):
    with pytest.raises(ValueError):
        response_intensity(steady_state(fig1a, 0.0), 0.0)


# --- blue poles -------------------------------------------------------------

def test_blue_poles_decoupled_empty():
    assert blue_poles(ModelParams(Case.BLUE, gamma_a=5, gamma_b=5)) == []


@pytest.mark.parametrize("g_a, expected", [(2.0, [0.0]), (1.9, []), (2.1, []), (6.0, [])])
def test_blue_poles_only_at_critical_coupling(g_a, expected):
    p = ModelParams(Case.BLUE, g_a=g_a, g_b=1.0, gamma_a=5, gamma_b=5)
    poles = blue_poles(p, window=(-20.0, 20.0))
    assert poles == pytest.approx(expected, abs=1e-12)


def test_blue_poles_odd_window_still_brackets_zero():
    p = ModelParams(Case.BLUE, g_a=2.0, g_b=1.0, gamma_a=5, gamma_b=5)
    assert blue_poles(p, window=(-3.3, 7.1), n_scan=1000) == pytest.approx([0.0], abs=1e-12)


def test_blue_poles_rejects_red():
    with pytest.raises(ValueError):
        blue_poles(ModelParams(Case.RED))


def test_pole_coupling_bisection():
    # root of kappa - g_a^2/gamma_a - g_b^2/gamma_b = 0
    p = ModelParams(Case.BLUE, g_b=1.0, gamma_a=5, gamma_b=5)
    assert pole_coupling(p, 0.5, 5.0) == pytest.approx(2.0, abs=1e-9)
    assert pole_coupling(p.with_(g_a=1.0), 0.5, 5.0, axis="g_b") == pytest.approx(2.0, abs=1e-9)
    with pytest.raises(ValueError):
        pole_coupling(p, 3.0, 5.0)


def test_pole_threshold_scales_with_kappa():
    p = ModelParams(Case.BLUE, g_a=2.0, g_b=1.0, gamma_a=5, gamma_b=5)
    q = effective_quantities(p, 0.0)
    assert abs(q.delta_eff - 1j * q.kappa_eff) < POLE_TOL * p.kappa
