"""Transceiver wavelength plans: BiDi 1310/1550 nm pairs and C-band DWDM channels."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, ModelValidityError
from .optics import LAMBDA_MAX_NM, LAMBDA_MIN_NM

C_NM_THZ = 299_792.458  # c expressed in nm * THz

GRID_ITU = "itu-frequency"
GRID_VENDOR = "vendor-linear"
GRID_CONVENTIONS = (GRID_ITU, GRID_VENDOR)

ITU_ANCHOR_THZ = 190.0
ITU_SPACING_THZ = 0.1
VENDOR_CH1_NM = 1520.25
VENDOR_STEP_NM = 0.8
N_CHANNELS = 72


@dataclass(frozen=True)
class WavelengthPlan:
    lambda_ms_nm: float
    lambda_sm_nm: float
    excess_ms_ps: float = 0.0
    excess_sm_ps: float = 0.0
    label: str = "custom"

    def __post_init__(self):
        for name in ("lambda_ms_nm", "lambda_sm_nm"):
            lam = getattr(self, name)
            if not LAMBDA_MIN_NM <= lam <= LAMBDA_MAX_NM:
                raise ModelValidityError(
                    f"{name}={lam} nm outside [{LAMBDA_MIN_NM}, {LAMBDA_MAX_NM}] nm"
                )
        for name in ("excess_ms_ps", "excess_sm_ps"):
            if getattr(self, name) < 0:
                raise ConfigError(f"{name} must be >= 0 ps")

    @property
    def separation_nm(self) -> float:
        return abs(self.lambda_ms_nm - self.lambda_sm_nm)

    def swapped(self) -> "WavelengthPlan":
        return WavelengthPlan(
            self.lambda_sm_nm, self.lambda_ms_nm, self.excess_sm_ps, self.excess_ms_ps, self.label
        )


def bidi_plan(short_at_master: bool = True) -> WavelengthPlan:
    if short_at_master:
        return WavelengthPlan(1310.0, 1550.0, label="BiDi WDM")
    return WavelengthPlan(1550.0, 1310.0, label="BiDi WDM")


def itu_frequency_thz(ch: int) -> float:
    return round(ITU_ANCHOR_THZ + ITU_SPACING_THZ * ch, 9)


def dwdm_channel_to_wavelength(ch: int, convention: str = GRID_ITU) -> float:
    """Centre wavelength in nm of DWDM channel ``ch`` (1..72).

    ``itu-frequency`` places channel n at 190.0 THz + n * 100 GHz.
    ``vendor-linear`` steps 0.8 nm per channel from 1520.25 nm at channel 1.
    """
    if isinstance(ch, bool) or int(ch) != ch or not 1 <= ch <= N_CHANNELS:
        raise ConfigError(f"DWDM channel {ch!r} outside 1..{N_CHANNELS}")
    if convention == GRID_ITU:
        return C_NM_THZ / itu_frequency_thz(ch)
    if convention == GRID_VENDOR:
        return VENDOR_CH1_NM + VENDOR_STEP_NM * (ch - 1)
    raise ConfigError(f"unknown grid convention {convention!r}; expected one of {GRID_CONVENTIONS}")


def dwdm_plan(
    ch_ms: int = 33,
    ch_sm: int = 34,
    convention: str = GRID_ITU,
    excess_ms_ps: float = 0.0,
    excess_sm_ps: float = 0.0,
) -> WavelengthPlan:
    if ch_ms == ch_sm:
        raise ConfigError(f"ch_ms and ch_sm are both {ch_ms}; a DWDM pair needs two channels")
    return WavelengthPlan(
        dwdm_channel_to_wavelength(ch_ms, convention),
        dwdm_channel_to_wavelength(ch_sm, convention),
        excess_ms_ps,
        excess_sm_ps,
        label=f"DWDM Ch{ch_ms}/Ch{ch_sm}",
    )


def channel_table() -> list[tuple[int, float, float, float]]:
    """Rows of (channel, ITU frequency THz, itu-frequency nm, vendor-linear nm)."""
    chans = np.arange(1, N_CHANNELS + 1)
    return [
        (
            int(ch),
            itu_frequency_thz(int(ch)),
            dwdm_channel_to_wavelength(int(ch), GRID_ITU),
            dwdm_channel_to_wavelength(int(ch), GRID_VENDOR),
        )
        for ch in chans
    ]
