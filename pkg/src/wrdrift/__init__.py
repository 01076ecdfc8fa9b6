"""Simulate White Rabbit 1PPS offset drift caused by fiber temperature changes."""

from .channels import WavelengthPlan, bidi_plan, dwdm_channel_to_wavelength, dwdm_plan
from .errors import ConfigError, ModelValidityError, ReportError, UndefinedRatioError, WrDriftError
from .experiment import (
    ExperimentReport,
    LinkSeries,
    Scenario,
    compare_plans,
    detect_steady,
    run_scenario,
    simulate,
    summarize,
)
from .optics import FiberSpec
from .thermal import ChamberProfile, FiberThermalModel, Segment
from .wrlink import LinkCalibration, LinkSample, NoiseModel, calibrate_alpha, fit_dlambda0

__version__ = "0.1.0"
