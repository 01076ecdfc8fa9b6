"""Temperature-dependent chromatic dispersion and group delay of a G.652.D fiber.

Dispersion follows the standard single-mode approximation

    D(lambda) = S0/4 * (lambda - lambda0**4 / lambda**3)

whose antiderivative gives the wavelength-dependent part of the group delay.
Temperature acts on dispersion only through the zero-dispersion wavelength
``lambda0(T)``; it acts on absolute delay through length expansion and the
thermo-optic coefficient.

Units: nm, ps, km, degrees Celsius.  All functions accept scalars or numpy
arrays for the temperature and wavelength arguments.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ModelValidityError

C_KM_PER_S = 299_792.458

LAMBDA_MIN_NM = 1260.0
LAMBDA_MAX_NM = 1625.0
T_MIN_C = -60.0
T_MAX_C = 85.0

# Fitted so the default BiDi scenario drifts by 220.4 ps over -20..40 C;
# see wrlink.fit_dlambda0.  Literature range is 0.02..0.03 nm/K.
DEFAULT_DLAMBDA0_DT = 0.020341


@dataclass(frozen=True)
class FiberSpec:
    length_km: float = 20.0
    lambda0_nm: float = 1310.0
    s0: float = 0.092
    dlambda0_dT: float = DEFAULT_DLAMBDA0_DT
    alpha_L: float = 5.6e-7
    ng_ref: float = 1.468
    dn_dT: float = 1.06e-5
    t_ref_c: float = -20.0

    def __post_init__(self):
        if not 1300.0 <= self.lambda0_nm <= 1324.0:
            raise ModelValidityError(
                f"lambda0_nm={self.lambda0_nm} nm outside the G.652.D band [1300, 1324] nm"
            )
        if not 0.0 < self.s0 <= 0.092:
            raise ModelValidityError(
                f"s0={self.s0} ps/(nm^2 km) outside (0, 0.092]"
            )
        if not self.length_km > 0.0:
            raise ModelValidityError(f"length_km={self.length_km} km must be positive")
        if not 1.0 < self.ng_ref < 2.0:
            raise ModelValidityError(f"ng_ref={self.ng_ref} outside (1, 2)")


def _check_temperature(t_c):
    t = np.asarray(t_c, dtype=float)
    if np.any((t < T_MIN_C) | (t > T_MAX_C)) or np.any(np.isnan(t)):
        raise ModelValidityError(
            f"temperature outside model range [{T_MIN_C}, {T_MAX_C}] C"
        )


def _check_wavelength(lambda_nm):
    lam = np.asarray(lambda_nm, dtype=float)
    if np.any((lam < LAMBDA_MIN_NM) | (lam > LAMBDA_MAX_NM)) or np.any(np.isnan(lam)):
        raise ModelValidityError(
            f"wavelength outside model window [{LAMBDA_MIN_NM}, {LAMBDA_MAX_NM}] nm"
        )


def lambda0_at(fiber: FiberSpec, t_c):
    """Zero-dispersion wavelength in nm at fiber temperature ``t_c``."""
    _check_temperature(t_c)
    return fiber.lambda0_nm + fiber.dlambda0_dT * (np.asarray(t_c, dtype=float) - fiber.t_ref_c)


def length_at(fiber: FiberSpec, t_c):
    """Effective optical length in km, including linear thermal expansion."""
    return fiber.length_km * (1.0 + fiber.alpha_L * (np.asarray(t_c, dtype=float) - fiber.t_ref_c))


def dispersion(fiber: FiberSpec, lambda_nm, t_c):
    """Chromatic dispersion D in ps/(nm km)."""
    _check_wavelength(lambda_nm)
    lam = np.asarray(lambda_nm, dtype=float)
    l0 = lambda0_at(fiber, t_c)
    return fiber.s0 / 4.0 * (lam - l0**4 / lam**3)


def relative_group_delay(fiber: FiberSpec, lambda_nm, t_c):
    """Wavelength-dependent group delay of the whole fiber, in ps.

    Defined up to a wavelength-independent constant, so only differences
    between wavelengths carry meaning.  Minimum at ``lambda0(T)``.
    """
    _check_wavelength(lambda_nm)
    lam = np.asarray(lambda_nm, dtype=float)
    l0 = lambda0_at(fiber, t_c)
    return length_at(fiber, t_c) * fiber.s0 / 8.0 * (lam**2 + l0**4 / lam**2)


def absolute_one_way_delay(fiber: FiberSpec, lambda_nm, t_c):
    """Total one-way propagation delay in ps."""
    ng = fiber.ng_ref + fiber.dn_dT * (np.asarray(t_c, dtype=float) - fiber.t_ref_c)
    base = length_at(fiber, t_c) * ng * (1e12 / C_KM_PER_S)
    return base + relative_group_delay(fiber, lambda_nm, t_c)


def asymmetry_delta(fiber: FiberSpec, lambda_ms, lambda_sm, t_c):
    """Master->slave minus slave->master dispersive delay, in ps."""
    return relative_group_delay(fiber, lambda_ms, t_c) - relative_group_delay(
        fiber, lambda_sm, t_c
    )
