"""Scenario configuration files (INI, unit-suffixed keys).

Layout::

    [meta]         schema_version
    [fiber]        length_km, lambda0_nm, s0_ps_per_nm2_km, ...
    [plan]         kind = bidi | dwdm | custom, plus kind-specific keys
    [noise]        timestamp_sigma_ps, tic_sigma_ps, seed
    [thermal]      tau_thermal_s, t_initial_c, step_s
    [calibration]  t_cal_c, fixed_*_ps, static_offset_ps
    [run]          sample_interval_s, horizon_s, steady_window_s, ...
    [segment.N]    kind = hold | ramp, setpoint_c, duration_s | ramp_rate_c_per_min

Every key is optional; an empty file is the default BiDi scenario.  Unknown
sections and keys are rejected.
"""

from __future__ import annotations

import configparser
import io
import re
from importlib import resources
from pathlib import Path

from . import channels
from .errors import ConfigError, ModelValidityError
from .experiment import (
    DEFAULT_STATIC_OFFSET_BIDI_PS,
    DEFAULT_STATIC_OFFSET_DWDM_PS,
    Scenario,
)
from .optics import FiberSpec
from .thermal import HOLD, RAMP, ChamberProfile, FiberThermalModel, Segment
from .wrlink import NoiseModel

SCHEMA_VERSION = 1

# config key -> (dataclass field, unit)
FIBER_KEYS = {
    "length_km": ("length_km", "km"),
    "lambda0_nm": ("lambda0_nm", "nm"),
    "s0_ps_per_nm2_km": ("s0", "ps/(nm^2 km)"),
    "dlambda0_dt_nm_per_k": ("dlambda0_dT", "nm/K"),
    "alpha_l_per_k": ("alpha_L", "1/K"),
    "ng_ref": ("ng_ref", "dimensionless"),
    "dn_dt_per_k": ("dn_dT", "1/K"),
    "t_ref_c": ("t_ref_c", "C"),
}
NOISE_KEYS = {
    "timestamp_sigma_ps": ("timestamp_sigma_ps", "ps"),
    "tic_sigma_ps": ("tic_sigma_ps", "ps"),
    "seed": ("seed", "integer"),
}
THERMAL_KEYS = {
    "tau_thermal_s": ("tau_thermal_s", "s"),
    "t_initial_c": ("t_initial_c", "C"),
    "step_s": ("thermal_step_s", "s"),
}
CALIBRATION_KEYS = {
    "t_cal_c": ("t_cal_c", "C"),
    "fixed_tx_m_ps": ("fixed_tx_m_ps", "ps"),
    "fixed_rx_m_ps": ("fixed_rx_m_ps", "ps"),
    "fixed_tx_s_ps": ("fixed_tx_s_ps", "ps"),
    "fixed_rx_s_ps": ("fixed_rx_s_ps", "ps"),
    "static_offset_ps": ("static_offset_ps", "ps"),
}
RUN_KEYS = {
    "sample_interval_s": ("sample_interval_s", "s"),
    "horizon_s": ("horizon_s", "s"),
    "steady_window_s": ("steady_window_s", "s"),
    "slope_threshold_ps_per_min": ("slope_threshold_ps_per_min", "ps/min"),
    "averaging_window_s": ("averaging_window_s", "s"),
}
PLAN_KEYS = {
    "bidi": {"kind", "short_at_master", "excess_ms_ps", "excess_sm_ps", "label"},
    "dwdm": {"kind", "ch_ms", "ch_sm", "grid", "excess_ms_ps", "excess_sm_ps", "label"},
    "custom": {"kind", "lambda_ms_nm", "lambda_sm_nm", "excess_ms_ps", "excess_sm_ps", "label"},
}
SEGMENT_KEYS = {"kind", "setpoint_c", "duration_s", "ramp_rate_c_per_min"}
SIMPLE_SECTIONS = {
    "fiber": FIBER_KEYS,
    "noise": NOISE_KEYS,
    "thermal": THERMAL_KEYS,
    "calibration": CALIBRATION_KEYS,
    "run": RUN_KEYS,
}
_SEGMENT_RE = re.compile(r"segment\.(\d+)$")


def _number(section, key, raw, unit):
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"[{section}] {key}: expected a number in {unit}, got {raw!r}") from None


def _integer(section, key, raw):
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"[{section}] {key}: expected an integer, got {raw!r}") from None


def _boolean(section, key, raw):
    value = raw.strip().lower()
    if value in ("true", "yes", "1", "on"):
        return True
    if value in ("false", "no", "0", "off"):
        return False
    raise ConfigError(f"[{section}] {key}: expected true/false, got {raw!r}")


def _check_keys(section, present, allowed):
    unknown = sorted(set(present) - set(allowed))
    if unknown:
        raise ConfigError(
            f"[{section}] unknown key(s) {', '.join(unknown)}; allowed: {', '.join(sorted(allowed))}"
        )


def _read_simple(parser, section, table):
    if not parser.has_section(section):
        return {}
    items = dict(parser.items(section))
    _check_keys(section, items, table)
    out = {}
    for key, raw in items.items():
        name, unit = table[key]
        out[name] = _integer(section, key, raw) if unit == "integer" else _number(section, key, raw, unit)
    return out


def _read_plan(parser):
    items = dict(parser.items("plan")) if parser.has_section("plan") else {}
    kind = items.get("kind", "bidi").strip()
    if kind not in PLAN_KEYS:
        raise ConfigError(f"[plan] kind: expected one of {', '.join(PLAN_KEYS)}, got {kind!r}")
    _check_keys("plan", items, PLAN_KEYS[kind])
    excess = {
        k: _number("plan", k, items[k], "ps") for k in ("excess_ms_ps", "excess_sm_ps") if k in items
    }
    if kind == "bidi":
        short = _boolean("plan", "short_at_master", items.get("short_at_master", "true"))
        plan = channels.bidi_plan(short)
        plan = channels.WavelengthPlan(
            plan.lambda_ms_nm,
            plan.lambda_sm_nm,
            excess.get("excess_ms_ps", 0.0),
            excess.get("excess_sm_ps", 0.0),
            plan.label,
        )
    elif kind == "dwdm":
        plan = channels.dwdm_plan(
            _integer("plan", "ch_ms", items.get("ch_ms", "33")),
            _integer("plan", "ch_sm", items.get("ch_sm", "34")),
            items.get("grid", channels.GRID_ITU).strip(),
            excess.get("excess_ms_ps", 0.0),
            excess.get("excess_sm_ps", 0.0),
        )
    else:
        for key in ("lambda_ms_nm", "lambda_sm_nm"):
            if key not in items:
                raise ConfigError(f"[plan] {key}: required for kind = custom (nm)")
        plan = channels.WavelengthPlan(
            _number("plan", "lambda_ms_nm", items["lambda_ms_nm"], "nm"),
            _number("plan", "lambda_sm_nm", items["lambda_sm_nm"], "nm"),
            excess.get("excess_ms_ps", 0.0),
            excess.get("excess_sm_ps", 0.0),
            "custom",
        )
    if "label" in items:
        plan = channels.WavelengthPlan(
            plan.lambda_ms_nm, plan.lambda_sm_nm, plan.excess_ms_ps, plan.excess_sm_ps, items["label"]
        )
    return kind, plan


def _read_profile(parser, segment_sections):
    if not segment_sections:
        return ChamberProfile.cold_hot()
    segments = []
    for _, section in sorted(segment_sections):
        items = dict(parser.items(section))
        _check_keys(section, items, SEGMENT_KEYS)
        kind = items.get("kind", "").strip()
        if "setpoint_c" not in items:
            raise ConfigError(f"[{section}] setpoint_c: required (C)")
        setpoint = _number(section, "setpoint_c", items["setpoint_c"], "C")
        if kind == HOLD:
            if "duration_s" not in items or "ramp_rate_c_per_min" in items:
                raise ConfigError(f"[{section}] hold segments take duration_s (s) only")
            segments.append(Segment(HOLD, setpoint, duration_s=_number(section, "duration_s", items["duration_s"], "s")))
        elif kind == RAMP:
            if "ramp_rate_c_per_min" not in items or "duration_s" in items:
                raise ConfigError(f"[{section}] ramp segments take ramp_rate_c_per_min (C/min) only")
            rate = _number(section, "ramp_rate_c_per_min", items["ramp_rate_c_per_min"], "C/min")
            segments.append(Segment(RAMP, setpoint, ramp_rate_c_per_min=rate))
        else:
            raise ConfigError(f"[{section}] kind: expected 'hold' or 'ramp', got {kind!r}")
    return ChamberProfile(tuple(segments))


def parse_config(text: str, source: str = "<string>") -> Scenario:
    parser = configparser.ConfigParser(interpolation=None, default_section="__unused__")
    try:
        parser.read_string(text, source=source)
    except configparser.Error as exc:
        raise ConfigError(f"{source}: cannot parse: {exc}") from None

    segment_sections = []
    for section in parser.sections():
        m = _SEGMENT_RE.match(section)
        if m:
            segment_sections.append((int(m.group(1)), section))
        elif section not in SIMPLE_SECTIONS and section not in ("meta", "plan"):
            raise ConfigError(f"unknown section [{section}]")

    if parser.has_section("meta"):
        meta = dict(parser.items("meta"))
        _check_keys("meta", meta, {"schema_version"})
        version = _integer("meta", "schema_version", meta.get("schema_version", str(SCHEMA_VERSION)))
        if version != SCHEMA_VERSION:
            raise ConfigError(f"[meta] schema_version: unsupported version {version}, expected {SCHEMA_VERSION}")

    try:
        fiber = FiberSpec(**_read_simple(parser, "fiber", FIBER_KEYS))
        kind, plan = _read_plan(parser)
        noise = NoiseModel(**_read_simple(parser, "noise", NOISE_KEYS))
        thermal_fields = _read_simple(parser, "thermal", THERMAL_KEYS)
        step = thermal_fields.pop("thermal_step_s", 1.0)
        thermal = FiberThermalModel(**thermal_fields)
        profile = _read_profile(parser, segment_sections)
        calib = _read_simple(parser, "calibration", CALIBRATION_KEYS)
        calib.setdefault(
            "static_offset_ps",
            DEFAULT_STATIC_OFFSET_DWDM_PS if kind == "dwdm" else DEFAULT_STATIC_OFFSET_BIDI_PS,
        )
        run = _read_simple(parser, "run", RUN_KEYS)
        return Scenario(
            fiber=fiber,
            plan=plan,
            noise=noise,
            profile=profile,
            thermal=thermal,
            thermal_step_s=step,
            **calib,
            **run,
        )
    except ModelValidityError as exc:
        raise ModelValidityError(f"{source}: {exc}") from None
    except ConfigError as exc:
        raise ConfigError(f"{source}: {exc}") from None


def load_config(path) -> Scenario:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    return parse_config(text, source=str(path))


def bundled_config(name: str) -> Path:
    """Path of a configuration shipped with the package (``bidi.cfg``, ``dwdm.cfg``)."""
    ref = resources.files("wrdrift") / "data" / name
    if not ref.is_file():
        raise ConfigError(f"no bundled config named {name!r}")
    return Path(str(ref))


def dump_config(s: Scenario) -> str:
    """Serialise a scenario so that :func:`parse_config` reproduces it exactly."""
    parser = configparser.ConfigParser(interpolation=None, default_section="__unused__")
    parser["meta"] = {"schema_version": str(SCHEMA_VERSION)}
    parser["fiber"] = {k: repr(float(getattr(s.fiber, f))) for k, (f, _) in FIBER_KEYS.items()}
    parser["plan"] = {
        "kind": "custom",
        "lambda_ms_nm": repr(s.plan.lambda_ms_nm),
        "lambda_sm_nm": repr(s.plan.lambda_sm_nm),
        "excess_ms_ps": repr(s.plan.excess_ms_ps),
        "excess_sm_ps": repr(s.plan.excess_sm_ps),
        "label": s.plan.label,
    }
    parser["noise"] = {
        "timestamp_sigma_ps": repr(s.noise.timestamp_sigma_ps),
        "tic_sigma_ps": repr(s.noise.tic_sigma_ps),
        "seed": str(s.noise.seed),
    }
    parser["thermal"] = {
        "tau_thermal_s": repr(s.thermal.tau_thermal_s),
        "t_initial_c": repr(s.thermal.t_initial_c),
        "step_s": repr(s.thermal_step_s),
    }
    parser["calibration"] = {k: repr(float(getattr(s, f))) for k, (f, _) in CALIBRATION_KEYS.items()}
    parser["run"] = {
        k: repr(float(getattr(s, f))) for k, (f, _) in RUN_KEYS.items() if getattr(s, f) is not None
    }
    for i, seg in enumerate(s.profile.segments, start=1):
        entry = {"kind": seg.kind, "setpoint_c": repr(seg.setpoint_c)}
        if seg.kind == HOLD:
            entry["duration_s"] = repr(seg.duration_s)
        else:
            entry["ramp_rate_c_per_min"] = repr(seg.ramp_rate_c_per_min)
        parser[f"segment.{i}"] = entry
    buf = io.StringIO()
    parser.write(buf)
    return buf.getvalue()
