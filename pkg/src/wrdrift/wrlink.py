"""Steady-state White Rabbit two-way time transfer over a dispersive fiber.

The slave estimates its master->slave delay from the measured fiber round
trip using the asymmetry coefficient ``alpha``:

    delay_ms_est = (1 + alpha) / (2 + alpha) * crtt + fixed_tx_m + fixed_rx_s

``alpha`` is computed once at the calibration temperature and frozen.  Any
later change in the true delay split shows up as a 1PPS offset ``dt``
between master and slave.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import brentq

from . import optics
from .channels import WavelengthPlan
from .errors import ConfigError
from .optics import FiberSpec


@dataclass(frozen=True)
class LinkCalibration:
    alpha: float = 0.0
    t_cal_c: float = -20.0
    fixed_tx_m_ps: float = 0.0
    fixed_rx_m_ps: float = 0.0
    fixed_tx_s_ps: float = 0.0
    fixed_rx_s_ps: float = 0.0
    static_offset_ps: float = 0.0

    def __post_init__(self):
        if not self.alpha > -1.0:
            raise ConfigError(f"alpha={self.alpha} must be > -1")
        for name in ("fixed_tx_m_ps", "fixed_rx_m_ps", "fixed_tx_s_ps", "fixed_rx_s_ps"):
            if getattr(self, name) < 0:
                raise ConfigError(f"{name} must be >= 0 ps")

    @property
    def fixed_ms_ps(self) -> float:
        return self.fixed_tx_m_ps + self.fixed_rx_s_ps

    @property
    def fixed_sm_ps(self) -> float:
        return self.fixed_tx_s_ps + self.fixed_rx_m_ps


@dataclass(frozen=True)
class LinkSample:
    t_s: float
    t_fiber_c: float
    crtt_ps: float
    delay_ms_true_ps: float
    delay_ms_est_ps: float
    dt_ps: float


@dataclass(frozen=True)
class NoiseModel:
    """White measurement noise: on cRTT (timestamping) and on dt (the TIC)."""

    timestamp_sigma_ps: float = 5.0
    tic_sigma_ps: float = 4.0
    seed: int = 0

    def __post_init__(self):
        if self.timestamp_sigma_ps < 0 or self.tic_sigma_ps < 0:
            raise ConfigError("noise sigmas must be >= 0 ps")

    def generator(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)

    def draw(self, rng: np.random.Generator, n: int) -> tuple[np.ndarray, np.ndarray]:
        """Return ``(crtt_noise, tic_noise)`` arrays of length ``n``."""
        crtt = rng.normal(0.0, self.timestamp_sigma_ps, n)
        tic = rng.normal(0.0, self.tic_sigma_ps, n)
        return crtt, tic


ZERO_NOISE = NoiseModel(0.0, 0.0, 0)


def fiber_path_delays(fiber: FiberSpec, plan: WavelengthPlan, t_c):
    """One-way delays excluding transceiver latencies (fiber plus mux/demux)."""
    d_ms = optics.absolute_one_way_delay(fiber, plan.lambda_ms_nm, t_c) + plan.excess_ms_ps
    d_sm = optics.absolute_one_way_delay(fiber, plan.lambda_sm_nm, t_c) + plan.excess_sm_ps
    return d_ms, d_sm


def true_delays(fiber: FiberSpec, plan: WavelengthPlan, calib: LinkCalibration, t_c):
    d_ms, d_sm = fiber_path_delays(fiber, plan, t_c)
    return d_ms + calib.fixed_ms_ps, d_sm + calib.fixed_sm_ps


def calibrate_alpha(
    fiber: FiberSpec,
    plan: WavelengthPlan,
    t_cal_c: float,
    fixed_tx_m_ps: float = 0.0,
    fixed_rx_m_ps: float = 0.0,
    fixed_tx_s_ps: float = 0.0,
    fixed_rx_s_ps: float = 0.0,
    static_offset_ps: float = 0.0,
) -> LinkCalibration:
    """Freeze ``alpha`` so that the delay estimate is exact at ``t_cal_c``."""
    d_ms, d_sm = fiber_path_delays(fiber, plan, t_cal_c)
    d_ms, d_sm = float(d_ms), float(d_sm)
    if d_ms <= 0 or d_sm <= 0:
        raise ConfigError("fiber-path delay must be positive for calibration")
    return LinkCalibration(
        alpha=d_ms / d_sm - 1.0,
        t_cal_c=t_cal_c,
        fixed_tx_m_ps=fixed_tx_m_ps,
        fixed_rx_m_ps=fixed_rx_m_ps,
        fixed_tx_s_ps=fixed_tx_s_ps,
        fixed_rx_s_ps=fixed_rx_s_ps,
        static_offset_ps=static_offset_ps,
    )


def estimate_delay_ms(crtt_fiber_ps, calib: LinkCalibration):
    crtt = np.asarray(crtt_fiber_ps, dtype=float)
    if np.any(crtt <= 0):
        raise ConfigError("cRTT must be positive")
    a = calib.alpha
    return (1.0 + a) / (2.0 + a) * crtt + calib.fixed_tx_m_ps + calib.fixed_rx_s_ps


def link_response(fiber, plan, calib, t_fiber_c, crtt_noise=0.0, tic_noise=0.0):
    """Vectorised core of :func:`sample_link`.

    Returns ``(crtt, delay_ms_true, delay_ms_est, dt)``.
    """
    d_ms, d_sm = fiber_path_delays(fiber, plan, t_fiber_c)
    crtt = d_ms + d_sm + crtt_noise
    true_ms = d_ms + calib.fixed_ms_ps
    est_ms = estimate_delay_ms(crtt, calib)
    # the 1PPS offset is the delay over-estimate: the slave advances too much
    dt = (est_ms - true_ms) + calib.static_offset_ps + tic_noise
    return crtt, true_ms, est_ms, dt


def sample_link(
    fiber: FiberSpec,
    plan: WavelengthPlan,
    calib: LinkCalibration,
    noise: NoiseModel,
    t_s: float,
    t_fiber_c: float,
    rng: np.random.Generator | None = None,
) -> LinkSample:
    if rng is None:
        rng = noise.generator()
    crtt_n, tic_n = noise.draw(rng, 1)
    crtt, true_ms, est_ms, dt = link_response(
        fiber, plan, calib, t_fiber_c, crtt_n[0], tic_n[0]
    )
    return LinkSample(
        t_s=float(t_s),
        t_fiber_c=float(t_fiber_c),
        crtt_ps=float(crtt),
        delay_ms_true_ps=float(true_ms),
        delay_ms_est_ps=float(est_ms),
        dt_ps=float(dt),
    )


def offset_drift(fiber: FiberSpec, plan: WavelengthPlan, t_cal_c: float, t_hot_c: float) -> float:
    """Zero-noise change of dt between ``t_cal_c`` and ``t_hot_c``, alpha frozen at ``t_cal_c``."""
    calib = calibrate_alpha(fiber, plan, t_cal_c)
    dt = link_response(fiber, plan, calib, np.array([t_cal_c, t_hot_c]))[3]
    return float(dt[1] - dt[0])


def first_order_drift_per_nm(fiber: FiberSpec, plan: WavelengthPlan) -> float:
    """Closed-form |d(dt)/d(lambda0)| in ps/nm from dispersion alone."""
    l0 = fiber.lambda0_nm
    return (
        0.5
        * fiber.length_km
        * (fiber.s0 / 2.0)
        * l0**3
        * abs(1.0 / plan.lambda_ms_nm**2 - 1.0 / plan.lambda_sm_nm**2)
    )


def fit_dlambda0(
    fiber: FiberSpec,
    plan: WavelengthPlan,
    t_cal_c: float,
    t_hot_c: float,
    target_drift_ps: float,
) -> float:
    """Find the lambda0 temperature coefficient (nm/K) giving a drift of ``target_drift_ps``.

    ``target_drift_ps`` is a magnitude.  It is matched in the direction a
    positive lambda0 shift drives the offset, so the solution may be slightly
    negative when the target is smaller than the drift caused by the
    common-mode delay change alone.  ``fiber.dlambda0_dT`` is ignored.
    """
    if t_hot_c == t_cal_c:
        raise ConfigError("t_hot_c must differ from t_cal_c")
    if target_drift_ps < 0:
        raise ConfigError("target_drift_ps is a magnitude and must be >= 0")

    def drift(k: float) -> float:
        return offset_drift(replace(fiber, dlambda0_dT=k), plan, t_cal_c, t_hot_c)

    probe = 0.01
    base, ahead = drift(0.0), drift(probe)
    if abs(ahead - base) < 1e-9:
        raise ConfigError(f"plan {plan.label!r} has no dispersion sensitivity; drift cannot be fitted")
    target = np.sign(ahead - base) * target_drift_ps

    def residual(k: float) -> float:
        return drift(k) - target

    lo, hi = -probe, probe
    for _ in range(30):
        if residual(lo) * residual(hi) <= 0:
            break
        lo, hi = 2 * lo, 2 * hi
    else:
        raise ConfigError(f"target drift {target_drift_ps} ps is out of reach")
    return float(brentq(residual, lo, hi, xtol=1e-14, rtol=1e-14, maxiter=200))
