"""Independent reference computations used to derive expected test values.

These re-derive the physics from the closed-form expressions with plain
``math`` (or brute force / quadrature) and never call into ``wrdrift``.
"""

import math

C_KM_PER_S = 299_792.458


def tau_rel(lam, length_km=20.0, s0=0.092, lam0=1310.0):
    return length_km * s0 / 8.0 * (lam**2 + lam0**4 / lam**2)


def dispersion(lam, s0=0.092, lam0=1310.0):
    return s0 / 4.0 * (lam - lam0**4 / lam**3)


class RefLink:
    """Default fiber + frozen-alpha WR estimate, written out longhand."""

    def __init__(self, lam_ms, lam_sm, k, length_km=20.0, s0=0.092, lam0=1310.0,
                 ng=1.468, dn_dt=1.06e-5, alpha_l=5.6e-7, t_ref=-20.0):
        self.lam_ms, self.lam_sm, self.k = lam_ms, lam_sm, k
        self.length_km, self.s0, self.lam0 = length_km, s0, lam0
        self.ng, self.dn_dt, self.alpha_l, self.t_ref = ng, dn_dt, alpha_l, t_ref

    def delay(self, lam, t):
        dT = t - self.t_ref
        length = self.length_km * (1 + self.alpha_l * dT)
        l0 = self.lam0 + self.k * dT
        base = length * (self.ng + self.dn_dt * dT) * 1e12 / C_KM_PER_S
        return base + length * self.s0 / 8.0 * (lam**2 + l0**4 / lam**2)

    def dt(self, t, t_cal):
        a = self.delay(self.lam_ms, t_cal) / self.delay(self.lam_sm, t_cal) - 1.0
        d_ms, d_sm = self.delay(self.lam_ms, t), self.delay(self.lam_sm, t)
        return (1 + a) / (2 + a) * (d_ms + d_sm) - d_ms

    def drift(self, t_cal, t_hot):
        return self.dt(t_hot, t_cal) - self.dt(t_cal, t_cal)


def lag_step_exact(t, t0, t_set, tau):
    """Fiber temperature after a step of the chamber from ``t0`` to ``t_set`` at time 0."""
    return t_set + (t0 - t_set) * math.exp(-t / tau)


def lag_ramp_exact(t, t0, rate_per_s, tau):
    """Response to a chamber ramp ``t0 + rate*t`` starting from equilibrium at ``t0``."""
    return t0 + rate_per_s * (t - tau * (1.0 - math.exp(-t / tau)))
