from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import RefLink
from wrdrift import optics
from wrdrift.channels import WavelengthPlan, bidi_plan, dwdm_plan
from wrdrift.errors import ConfigError
from wrdrift.optics import FiberSpec
from wrdrift.wrlink import (
    ZERO_NOISE,
    LinkCalibration,
    NoiseModel,
    calibrate_alpha,
    estimate_delay_ms,
    fit_dlambda0,
    first_order_drift_per_nm,
    link_response,
    offset_drift,
    sample_link,
    true_delays,
)

FIBER = FiberSpec(dlambda0_dT=0.0213)
# dispersion physics only: no length expansion, no thermo-optic drift
DISPERSION_ONLY = replace(FIBER, dn_dT=0.0, alpha_L=0.0)
BIDI = bidi_plan(True)
DWDM = dwdm_plan(33, 34)
T_CAL = -20.0


class TestTrueDelays:
    def test_symmetric(self):
        plan = WavelengthPlan(1550.0, 1550.0)
        d_ms, d_sm = true_delays(FIBER, plan, LinkCalibration(), 12.0)
        assert d_ms == d_sm

    def test_bidi_difference(self):
        calib = LinkCalibration(fixed_tx_m_ps=300, fixed_rx_m_ps=300, fixed_tx_s_ps=200, fixed_rx_s_ps=200)
        d_ms, d_sm = true_delays(FIBER, BIDI, calib, FIBER.t_ref_c)
        assert d_sm - d_ms == pytest.approx(45_104.408, abs=1e-3)
        assert d_ms > 0 and d_sm > 0

    def test_excess_is_additive(self):
        a = true_delays(FIBER, BIDI, LinkCalibration(), 5.0)[0]
        b = true_delays(FIBER, replace(BIDI, excess_ms_ps=500.0), LinkCalibration(), 5.0)[0]
        assert b - a == pytest.approx(500.0, abs=1e-7)


class TestCalibration:
    def test_symmetric_alpha_zero(self):
        assert calibrate_alpha(FIBER, WavelengthPlan(1550.0, 1550.0), T_CAL).alpha == 0.0

    def test_bidi_alpha(self):
        ref = RefLink(1310.0, 1550.0, 0.0213)
        expected = ref.delay(1310.0, T_CAL) / ref.delay(1550.0, T_CAL) - 1.0
        alpha = calibrate_alpha(FIBER, BIDI, T_CAL).alpha
        assert alpha == pytest.approx(expected, rel=1e-9)
        assert alpha == pytest.approx(-4.5667e-4, rel=1e-4)

    def test_swap_inverts_ratio(self):
        a = calibrate_alpha(FIBER, BIDI, T_CAL).alpha
        b = calibrate_alpha(FIBER, BIDI.swapped(), T_CAL).alpha
        assert b == pytest.approx(1.0 / (1.0 + a) - 1.0, rel=1e-12)

    def test_estimate_exact_at_calibration(self):
        calib = calibrate_alpha(FIBER, BIDI, T_CAL, 150.0, 120.0, 130.0, 140.0)
        crtt, true_ms, est_ms, _ = link_response(FIBER, BIDI, calib, T_CAL)
        assert est_ms == pytest.approx(true_ms, abs=1e-6)

    def test_invalid_alpha(self):
        with pytest.raises(ConfigError):
            LinkCalibration(alpha=-1.0)

    def test_negative_fixed_latency(self):
        with pytest.raises(ConfigError):
            LinkCalibration(fixed_rx_m_ps=-1.0)


class TestEstimate:
    def test_symmetric_split(self):
        calib = LinkCalibration(alpha=0.0, fixed_tx_m_ps=10.0, fixed_rx_s_ps=5.0)
        assert estimate_delay_ms(1000.0, calib) == 515.0

    @given(st.floats(-0.99, 10.0))
    def test_sensitivity_in_unit_interval(self, alpha):
        calib = LinkCalibration(alpha=alpha)
        slope = estimate_delay_ms(2e8, calib) - estimate_delay_ms(1e8, calib)
        assert slope / 1e8 == pytest.approx((1 + alpha) / (2 + alpha), rel=1e-9)
        assert 0 < slope / 1e8 < 1

    def test_non_positive_crtt(self):
        with pytest.raises(ConfigError):
            estimate_delay_ms(0.0, LinkCalibration())


class TestSampleLink:
    def test_calibration_point(self):
        calib = calibrate_alpha(FIBER, BIDI, T_CAL, static_offset_ps=29.0)
        s = sample_link(FIBER, BIDI, calib, ZERO_NOISE, 0.0, T_CAL)
        assert abs(s.dt_ps - 29.0) < 1e-6
        assert s.crtt_ps > 0
        assert s.delay_ms_est_ps == pytest.approx(s.delay_ms_true_ps, abs=1e-6)

    def test_bidi_hot_matches_reference_model(self):
        calib = calibrate_alpha(FIBER, BIDI, T_CAL)
        s = sample_link(FIBER, BIDI, calib, ZERO_NOISE, 0.0, 40.0)
        expected = RefLink(1310.0, 1550.0, 0.0213).drift(T_CAL, 40.0)
        assert s.dt_ps == pytest.approx(expected, rel=1e-9)
        # dispersion alone accounts for ~-220 ps; the frozen alpha adds ~-10 ps
        assert s.dt_ps == pytest.approx(-230.35, abs=0.01)

    def test_bidi_hot_dispersion_only_closed_form(self):
        calib = calibrate_alpha(DISPERSION_ONLY, BIDI, T_CAL)
        s = sample_link(DISPERSION_ONLY, BIDI, calib, ZERO_NOISE, 0.0, 40.0)
        closed = -first_order_drift_per_nm(DISPERSION_ONLY, BIDI) * 0.0213 * 60.0
        assert closed == pytest.approx(-220.0, abs=0.5)
        assert s.dt_ps == pytest.approx(closed, rel=0.01)

    def test_dwdm_hot(self):
        calib = calibrate_alpha(FIBER, DWDM, T_CAL)
        s = sample_link(FIBER, DWDM, calib, ZERO_NOISE, 0.0, 40.0)
        assert abs(s.dt_ps) <= 2.0

    def test_noise_determinism(self):
        noise = NoiseModel(5.0, 4.0, seed=42)
        calib = calibrate_alpha(FIBER, BIDI, T_CAL)
        a = [sample_link(FIBER, BIDI, calib, noise, t, 10.0, rng) for rng in [noise.generator()] for t in range(5)]
        b = [sample_link(FIBER, BIDI, calib, noise, t, 10.0, rng) for rng in [noise.generator()] for t in range(5)]
        assert a == b
        assert len({s.dt_ps for s in a}) == 5

    def test_noise_sigma_validation(self):
        with pytest.raises(ConfigError):
            NoiseModel(-1.0, 0.0)


class TestDriftLaws:
    @settings(max_examples=40)
    @given(
        st.lists(st.floats(-60.0, 85.0), min_size=1, max_size=20),
        st.floats(1260.0, 1625.0),
        st.floats(0.0, 2000.0),
    )
    def test_zero_asymmetry_neutrality(self, temps, lam, excess):
        plan = WavelengthPlan(lam, lam, excess, excess)
        calib = calibrate_alpha(FIBER, plan, T_CAL, 100.0, 200.0, 300.0, 400.0, static_offset_ps=7.5)
        dt = link_response(FIBER, plan, calib, np.array(temps))[3]
        np.testing.assert_allclose(dt, 7.5, atol=1e-6)

    @given(st.floats(-60.0, 85.0))
    def test_frozen_alpha_decomposition(self, t):
        # exact identity: d(dt) = -1/2 d(delta) + (r - 1/2) d(cRTT), r = (1+a)/(2+a)
        calib = calibrate_alpha(FIBER, BIDI, T_CAL)
        r = (1 + calib.alpha) / (2 + calib.alpha)
        crtt = link_response(FIBER, BIDI, calib, np.array([T_CAL, t]))[0]
        delta = optics.asymmetry_delta(FIBER, 1310.0, 1550.0, np.array([T_CAL, t]))
        expected = -0.5 * (delta[1] - delta[0]) + (r - 0.5) * (crtt[1] - crtt[0])
        assert offset_drift(FIBER, BIDI, T_CAL, t) == pytest.approx(expected, abs=1e-6)

    @pytest.mark.parametrize("t_hot", [-10.0, 0.0, 20.0, 40.0])
    def test_half_asymmetry_law_dispersion_only(self, t_hot):
        delta = optics.asymmetry_delta(DISPERSION_ONLY, 1310.0, 1550.0, np.array([T_CAL, t_hot]))
        drift = offset_drift(DISPERSION_ONLY, BIDI, T_CAL, t_hot)
        assert drift == pytest.approx(-0.5 * (delta[1] - delta[0]), rel=0.01)

    def test_sign(self):
        temps = np.linspace(-20.0, 40.0, 13)
        calib = calibrate_alpha(FIBER, BIDI, T_CAL)
        dt = link_response(FIBER, BIDI, calib, temps)[3]
        assert np.all(np.diff(dt) < 0)


def _scan_fit(ref_factory, target, lo, hi, step=1e-5):
    """Brute-force: the grid value of k whose drift magnitude is closest to target."""
    ks = np.arange(lo, hi + step / 2, step)
    errs = [abs(abs(ref_factory(k).drift(T_CAL, 40.0)) - target) for k in ks]
    return ks[int(np.argmin(errs))]


class TestFit:
    def test_default_fiber_against_scan(self):
        k = fit_dlambda0(FIBER, BIDI, T_CAL, 40.0, 220.4)
        k_scan = _scan_fit(lambda k: RefLink(1310.0, 1550.0, k), 220.4, 0.0150, 0.0300)
        assert abs(k - k_scan) <= 1e-5
        assert abs(offset_drift(replace(FIBER, dlambda0_dT=k), BIDI, T_CAL, 40.0) + 220.4) < 1e-3

    def test_dispersion_only_matches_closed_form(self):
        k = fit_dlambda0(DISPERSION_ONLY, BIDI, T_CAL, 40.0, 220.4)
        closed = 220.4 / (first_order_drift_per_nm(DISPERSION_ONLY, BIDI) * 60.0)
        assert k == pytest.approx(0.0213, abs=1e-4)
        assert k == pytest.approx(closed, rel=0.01)
        k_scan = _scan_fit(lambda k: RefLink(1310.0, 1550.0, k, dn_dt=0.0, alpha_l=0.0), 220.4, 0.0150, 0.0300)
        assert abs(k - k_scan) <= 1e-5

    def test_zero_target_dispersion_only(self):
        assert fit_dlambda0(DISPERSION_ONLY, BIDI, T_CAL, 40.0, 0.0) == pytest.approx(0.0, abs=1e-12)

    def test_zero_target_default_fiber_cancels_common_mode(self):
        k = fit_dlambda0(FIBER, BIDI, T_CAL, 40.0, 0.0)
        assert k < 0
        assert abs(offset_drift(replace(FIBER, dlambda0_dT=k), BIDI, T_CAL, 40.0)) < 1e-3

    def test_double_length_halves(self):
        k1 = fit_dlambda0(DISPERSION_ONLY, BIDI, T_CAL, 40.0, 220.4)
        k2 = fit_dlambda0(replace(DISPERSION_ONLY, length_km=40.0), BIDI, T_CAL, 40.0, 220.4)
        assert k2 == pytest.approx(k1 / 2, rel=0.01)

    def test_ignores_fiber_coefficient(self):
        a = fit_dlambda0(replace(FIBER, dlambda0_dT=0.0), BIDI, T_CAL, 40.0, 100.0)
        b = fit_dlambda0(replace(FIBER, dlambda0_dT=0.05), BIDI, T_CAL, 40.0, 100.0)
        assert a == b

    def test_symmetric_plan_unsolvable(self):
        with pytest.raises(ConfigError):
            fit_dlambda0(FIBER, WavelengthPlan(1550.0, 1550.0), T_CAL, 40.0, 10.0)

    def test_equal_temperatures(self):
        with pytest.raises(ConfigError):
            fit_dlambda0(FIBER, BIDI, T_CAL, T_CAL, 10.0)

    def test_default_constant_is_the_fit(self):
        k = fit_dlambda0(FiberSpec(), BIDI, T_CAL, 40.0, 220.4)
        assert FiberSpec().dlambda0_dT == pytest.approx(k, abs=5e-7)
