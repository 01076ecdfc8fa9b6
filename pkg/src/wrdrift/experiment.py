"""Run a wavelength plan through a chamber protocol and summarise the cold and hot plateaus.

The cold/hot offset means are taken over the tail of each steady interval,
where steadiness is judged on cRTT (the fiber-temperature proxy), not on dt.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .channels import WavelengthPlan, bidi_plan
from .errors import ConfigError, ReportError, UndefinedRatioError
from .optics import FiberSpec
from .thermal import ChamberProfile, FiberThermalModel, fiber_temperature_series
from .wrlink import LinkCalibration, LinkSample, NoiseModel, calibrate_alpha, link_response

DEFAULT_STATIC_OFFSET_BIDI_PS = 29.0
DEFAULT_STATIC_OFFSET_DWDM_PS = 24.9
# cRTT slope magnitude (ps/min) below which a window counts as steady;
# 80 ps/min is ~0.05 K/min of fiber drift at 1.52 ns/K, i.e. ~1 K from setpoint at tau=1200 s
DEFAULT_SLOPE_THRESHOLD_PS_PER_MIN = 80.0
DEFAULT_STEADY_WINDOW_S = 600.0
DEFAULT_AVERAGING_WINDOW_S = 1200.0


@dataclass(frozen=True)
class Scenario:
    fiber: FiberSpec = field(default_factory=FiberSpec)
    plan: WavelengthPlan = field(default_factory=bidi_plan)
    noise: NoiseModel = field(default_factory=NoiseModel)
    profile: ChamberProfile = field(default_factory=ChamberProfile.cold_hot)
    thermal: FiberThermalModel = field(default_factory=FiberThermalModel)
    t_cal_c: float = -20.0
    fixed_tx_m_ps: float = 0.0
    fixed_rx_m_ps: float = 0.0
    fixed_tx_s_ps: float = 0.0
    fixed_rx_s_ps: float = 0.0
    static_offset_ps: float = DEFAULT_STATIC_OFFSET_BIDI_PS
    sample_interval_s: float = 1.0
    thermal_step_s: float = 1.0
    horizon_s: float | None = None
    steady_window_s: float = DEFAULT_STEADY_WINDOW_S
    slope_threshold_ps_per_min: float = DEFAULT_SLOPE_THRESHOLD_PS_PER_MIN
    averaging_window_s: float = DEFAULT_AVERAGING_WINDOW_S

    def __post_init__(self):
        if not self.sample_interval_s > 0:
            raise ConfigError("sample_interval_s must be > 0 s")
        horizon = self.effective_horizon_s
        if horizon < self.profile.duration_s:
            raise ConfigError(
                f"horizon_s={horizon} s shorter than the chamber profile ({self.profile.duration_s} s)"
            )
        if not 0 < self.steady_window_s < horizon:
            raise ConfigError("steady_window_s must be positive and shorter than the horizon")
        if not 0 < self.averaging_window_s <= horizon:
            raise ConfigError("averaging_window_s must be positive and fit the horizon")
        if self.slope_threshold_ps_per_min < 0:
            raise ConfigError("slope_threshold_ps_per_min must be >= 0")

    @property
    def effective_horizon_s(self) -> float:
        return self.profile.duration_s if self.horizon_s is None else self.horizon_s

    def calibrate(self) -> LinkCalibration:
        return calibrate_alpha(
            self.fiber,
            self.plan,
            self.t_cal_c,
            self.fixed_tx_m_ps,
            self.fixed_rx_m_ps,
            self.fixed_tx_s_ps,
            self.fixed_rx_s_ps,
            self.static_offset_ps,
        )


@dataclass(frozen=True)
class LinkSeries:
    """Columns of a scenario run; indexing yields :class:`LinkSample` rows."""

    t_s: np.ndarray
    t_chamber_c: np.ndarray
    t_fiber_c: np.ndarray
    crtt_ps: np.ndarray
    delay_ms_true_ps: np.ndarray
    delay_ms_est_ps: np.ndarray
    dt_ps: np.ndarray
    label: str = ""

    def __len__(self):
        return len(self.t_s)

    def __getitem__(self, i) -> LinkSample:
        return LinkSample(
            float(self.t_s[i]),
            float(self.t_fiber_c[i]),
            float(self.crtt_ps[i]),
            float(self.delay_ms_true_ps[i]),
            float(self.delay_ms_est_ps[i]),
            float(self.dt_ps[i]),
        )

    def __iter__(self):
        return (self[i] for i in range(len(self)))

    @property
    def interval_s(self) -> float:
        return float(self.t_s[1] - self.t_s[0]) if len(self) > 1 else 0.0


@dataclass(frozen=True)
class SteadyInterval:
    start_s: float
    end_s: float
    i_start: int
    i_stop: int  # exclusive


@dataclass(frozen=True)
class ExperimentReport:
    label: str
    dt_cold_ps: float
    dt_hot_ps: float
    dt_delta_ps: float
    stabilization_time_s: float
    n_cold: int
    n_hot: int


def run_scenario(s: Scenario) -> LinkSeries:
    horizon = s.effective_horizon_s
    t_grid, chamber_grid, fiber_grid = fiber_temperature_series(
        s.profile, s.thermal, s.thermal_step_s, horizon
    )
    n = int(round(horizon / s.sample_interval_s))
    t = np.arange(n) * s.sample_interval_s
    if s.sample_interval_s == s.thermal_step_s:
        t_fiber = fiber_grid[:n]
        t_chamber = chamber_grid[:n]
    else:
        t_fiber = np.interp(t, t_grid, fiber_grid)
        t_chamber = np.interp(t, t_grid, chamber_grid)

    calib = s.calibrate()
    crtt_noise, tic_noise = s.noise.draw(s.noise.generator(), n)
    crtt, true_ms, est_ms, dt = link_response(
        s.fiber, s.plan, calib, t_fiber, crtt_noise, tic_noise
    )
    return LinkSeries(t, t_chamber, t_fiber, crtt, true_ms, est_ms, dt, s.plan.label)


def detect_steady(
    series: LinkSeries,
    window_s: float = DEFAULT_STEADY_WINDOW_S,
    slope_threshold_ps_per_min: float = DEFAULT_SLOPE_THRESHOLD_PS_PER_MIN,
) -> list[SteadyInterval]:
    """Maximal runs of samples whose centred cRTT window has a slope below threshold.

    Each sample takes the least-squares slope of the ``window_s`` window
    centred on it; samples within half a window of either end take the
    nearest complete window.  An empty list means the link never settled.
    """
    n_total = len(series)
    if n_total < 2:
        raise ConfigError("series too short for steady-state detection")
    n = int(round(window_s / series.interval_s)) + 1
    if n > n_total:
        raise ConfigError(f"steady window {window_s} s is longer than the series")
    slopes = kernels.sliding_slope(series.t_s, series.crtt_ps, n) * 60.0
    window_of = np.clip(np.arange(n_total) - (n - 1) // 2, 0, slopes.size - 1)
    steady = np.abs(slopes[window_of]) <= slope_threshold_ps_per_min

    edges = np.diff(np.concatenate(([0], steady.astype(np.int8), [0])))
    intervals = []
    for i0, i1 in zip(np.nonzero(edges == 1)[0], np.nonzero(edges == -1)[0]):
        intervals.append(
            SteadyInterval(float(series.t_s[i0]), float(series.t_s[i1 - 1]), int(i0), int(i1))
        )
    return intervals


def _ramp_start_s(series: LinkSeries) -> float:
    moved = np.nonzero(series.t_chamber_c != series.t_chamber_c[0])[0]
    if moved.size == 0:
        return float("nan")
    return float(series.t_s[moved[0] - 1])


def summarize(
    series: LinkSeries,
    intervals: list[SteadyInterval],
    averaging_window_s: float = DEFAULT_AVERAGING_WINDOW_S,
) -> ExperimentReport:
    """Mean dt over the trailing ``averaging_window_s`` of the cold and hot steady intervals.

    Cold is the first interval whose mean fiber temperature lies below the
    midpoint of the run's fiber-temperature range, hot the last one above it.
    Intervals shorter than the averaging window are averaged whole.
    """
    t_lo, t_hi = float(np.min(series.t_fiber_c)), float(np.max(series.t_fiber_c))
    if t_hi - t_lo < 1e-9:
        raise ReportError("fiber temperature never changes; no cold/hot phases to compare")
    mid = 0.5 * (t_lo + t_hi)

    def mean_temp(iv):
        return float(np.mean(series.t_fiber_c[iv.i_start:iv.i_stop]))

    cold = [iv for iv in intervals if mean_temp(iv) < mid]
    hot = [iv for iv in intervals if mean_temp(iv) > mid]
    missing = [name for name, ivs in (("cold", cold), ("hot", hot)) if not ivs]
    if missing:
        raise ReportError(f"no steady interval found for phase(s): {', '.join(missing)}")
    cold_iv, hot_iv = cold[0], hot[-1]

    def tail_mean(iv):
        t = series.t_s[iv.i_start:iv.i_stop]
        sel = t > t[-1] - averaging_window_s
        return float(np.mean(series.dt_ps[iv.i_start:iv.i_stop][sel])), int(np.count_nonzero(sel))

    dt_cold, n_cold = tail_mean(cold_iv)
    dt_hot, n_hot = tail_mean(hot_iv)
    return ExperimentReport(
        label=series.label,
        dt_cold_ps=dt_cold,
        dt_hot_ps=dt_hot,
        dt_delta_ps=abs(dt_hot - dt_cold),
        stabilization_time_s=hot_iv.start_s - _ramp_start_s(series),
        n_cold=n_cold,
        n_hot=n_hot,
    )


def simulate(s: Scenario) -> tuple[LinkSeries, list[SteadyInterval], ExperimentReport]:
    series = run_scenario(s)
    intervals = detect_steady(series, s.steady_window_s, s.slope_threshold_ps_per_min)
    return series, intervals, summarize(series, intervals, s.averaging_window_s)


def compare_plans(report_a: ExperimentReport, report_b: ExperimentReport) -> float:
    """Ratio of drift magnitudes, ``a / b``."""
    if report_b.dt_delta_ps == 0:
        raise UndefinedRatioError(f"report {report_b.label!r} has zero drift; ratio undefined")
    return report_a.dt_delta_ps / report_b.dt_delta_ps
