"""Pure-Python/numpy versions of the inner loops in ``_kernels.pyx``.

Used when the compiled extension is not built.  Both implementations must
agree to rounding error; ``tests/test_kernels.py`` checks this.
"""

import math

import numpy as np


def lag_response(setpoint, step_s, tau_s, initial):
    """First-order lag driven by a setpoint sampled every ``step_s`` seconds.

    Each step treats the setpoint as linear between grid points and applies
    the exact solution of ``dT/dt = (u(t) - T) / tau`` over that step.
    """
    u = np.ascontiguousarray(setpoint, dtype=np.float64)
    out = np.empty_like(u)
    if u.size == 0:
        return out
    decay = math.exp(-step_s / tau_s)
    out[0] = initial
    temp = float(initial)
    for i in range(u.size - 1):
        u0 = u[i]
        slope = (u[i + 1] - u0) / step_s
        temp = u0 + slope * (step_s - tau_s) + (temp - u0 + slope * tau_s) * decay
        out[i + 1] = temp
    return out


def sliding_slope(x, y, n):
    """Least-squares slope of ``y`` against ``x`` for every window of ``n`` samples.

    Element ``i`` of the result covers samples ``i .. i+n-1``.
    """
    x = np.ascontiguousarray(x, dtype=np.float64)
    y = np.ascontiguousarray(y, dtype=np.float64)
    if n < 2 or n > x.size:
        return np.empty(0)
    # shift to the first sample to limit cancellation in the running sums
    xc = x - x[0]
    yc = y - y[0]
    zero = np.zeros(1)
    sx = np.concatenate((zero, np.cumsum(xc)))
    sy = np.concatenate((zero, np.cumsum(yc)))
    sxx = np.concatenate((zero, np.cumsum(xc * xc)))
    sxy = np.concatenate((zero, np.cumsum(xc * yc)))
    wx = sx[n:] - sx[:-n]
    wy = sy[n:] - sy[:-n]
    wxx = sxx[n:] - sxx[:-n]
    wxy = sxy[n:] - sxy[:-n]
    return (n * wxy - wx * wy) / (n * wxx - wx * wx)
