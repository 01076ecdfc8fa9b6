"""Climatic-chamber setpoint profiles and the fiber spool's first-order thermal lag."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import ConfigError

HOLD = "hold"
RAMP = "ramp"


@dataclass(frozen=True)
class Segment:
    kind: str
    setpoint_c: float
    duration_s: float | None = None
    ramp_rate_c_per_min: float | None = None

    def __post_init__(self):
        if self.kind == HOLD:
            if self.duration_s is None or not self.duration_s > 0:
                raise ConfigError("hold segment needs duration_s > 0")
        elif self.kind == RAMP:
            if self.ramp_rate_c_per_min is None or not self.ramp_rate_c_per_min > 0:
                raise ConfigError("ramp segment needs ramp_rate_c_per_min > 0")
        else:
            raise ConfigError(f"segment kind must be 'hold' or 'ramp', got {self.kind!r}")


@dataclass(frozen=True)
class ChamberProfile:
    segments: tuple[Segment, ...]

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))
        if not self.segments:
            raise ConfigError("chamber profile needs at least one segment")
        if self.segments[0].kind != HOLD:
            raise ConfigError("first profile segment must be a hold (ramps need a start point)")
        self.breakpoints()

    def breakpoints(self) -> tuple[np.ndarray, np.ndarray]:
        """Times (s) and setpoints (C) of the piecewise-linear trajectory."""
        first = self.segments[0]
        times = [0.0]
        temps = [first.setpoint_c]
        for seg in self.segments:
            if seg.kind == HOLD:
                if seg.setpoint_c != temps[-1]:
                    raise ConfigError(
                        f"hold at {seg.setpoint_c} C follows {temps[-1]} C; insert a ramp"
                    )
                times.append(times[-1] + seg.duration_s)
                temps.append(seg.setpoint_c)
            else:
                span = abs(seg.setpoint_c - temps[-1])
                if span == 0:
                    raise ConfigError("ramp segment to the current setpoint has zero duration")
                times.append(times[-1] + span / seg.ramp_rate_c_per_min * 60.0)
                temps.append(seg.setpoint_c)
        return np.array(times), np.array(temps)

    @property
    def duration_s(self) -> float:
        return float(self.breakpoints()[0][-1])

    @classmethod
    def cold_hot(
        cls,
        cold_c: float = -20.0,
        hot_c: float = 40.0,
        cold_hold_s: float = 1800.0,
        ramp_rate_c_per_min: float = 2.0,
        hot_hold_s: float = 7200.0,
    ) -> "ChamberProfile":
        """Hold cold, ramp to hot, hold hot."""
        return cls(
            (
                Segment(HOLD, cold_c, duration_s=cold_hold_s),
                Segment(RAMP, hot_c, ramp_rate_c_per_min=ramp_rate_c_per_min),
                Segment(HOLD, hot_c, duration_s=hot_hold_s),
            )
        )


@dataclass(frozen=True)
class FiberThermalModel:
    tau_thermal_s: float = 1200.0
    t_initial_c: float = -20.0

    def __post_init__(self):
        if not self.tau_thermal_s > 0:
            raise ConfigError("tau_thermal_s must be > 0 s")


def chamber_setpoint(profile: ChamberProfile, t_s):
    """Setpoint at time ``t_s``; the final setpoint holds after the profile ends."""
    times, temps = profile.breakpoints()
    t = np.asarray(t_s, dtype=float)
    if np.any(t < 0):
        raise ConfigError("time must be >= 0 s")
    out = np.interp(t, times, temps)
    return out if out.ndim else float(out)


def fiber_temperature_series(
    profile: ChamberProfile,
    model: FiberThermalModel,
    dt_s: float = 1.0,
    horizon_s: float | None = None,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Integrate the fiber temperature on a uniform grid.

    Returns ``(t_s, t_chamber_c, t_fiber_c)`` sampled at ``k * dt_s`` for
    ``k = 0 .. horizon_s / dt_s`` inclusive.
    """
    if not 0 < dt_s <= 60:
        raise ConfigError("thermal step dt_s must be in (0, 60] s")
    if horizon_s is None:
        horizon_s = profile.duration_s
    if horizon_s < profile.duration_s:
        raise ConfigError(
            f"horizon {horizon_s} s shorter than chamber profile ({profile.duration_s} s)"
        )
    n = int(round(horizon_s / dt_s))
    t = np.arange(n + 1) * dt_s
    chamber = chamber_setpoint(profile, t)
    fiber = kernels.lag_response(chamber, dt_s, model.tau_thermal_s, model.t_initial_c)
    return t, chamber, fiber
