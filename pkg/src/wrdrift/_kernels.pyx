# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops for the thermal integrator and steady-state detector."""

import numpy as np
cimport numpy as cnp
from libc.math cimport exp

cnp.import_array()


def lag_response(setpoint, double step_s, double tau_s, double initial):
    cdef const double[::1] u = np.ascontiguousarray(setpoint, dtype=np.float64)
    cdef Py_ssize_t n = u.shape[0]
    out_arr = np.empty(n, dtype=np.float64)
    if n == 0:
        return out_arr
    cdef double[::1] out = out_arr
    cdef double decay = exp(-step_s / tau_s)
    cdef double temp = initial
    cdef double u0, slope
    cdef Py_ssize_t i
    out[0] = initial
    for i in range(n - 1):
        u0 = u[i]
        slope = (u[i + 1] - u0) / step_s
        temp = u0 + slope * (step_s - tau_s) + (temp - u0 + slope * tau_s) * decay
        out[i + 1] = temp
    return out_arr


def sliding_slope(x, y, Py_ssize_t n):
    cdef const double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef const double[::1] yv = np.ascontiguousarray(y, dtype=np.float64)
    cdef Py_ssize_t size = xv.shape[0]
    if n < 2 or n > size:
        return np.empty(0)
    cdef Py_ssize_t m = size - n + 1
    out_arr = np.empty(m, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef double x0 = xv[0], y0 = yv[0]
    cdef double sx = 0, sy = 0, sxx = 0, sxy = 0
    cdef double xi, yi
    cdef Py_ssize_t i
    for i in range(n):
        xi = xv[i] - x0
        yi = yv[i] - y0
        sx += xi
        sy += yi
        sxx += xi * xi
        sxy += xi * yi
    out[0] = (n * sxy - sx * sy) / (n * sxx - sx * sx)
    for i in range(1, m):
        xi = xv[i - 1] - x0
        yi = yv[i - 1] - y0
        sx -= xi
        sy -= yi
        sxx -= xi * xi
        sxy -= xi * yi
        xi = xv[i + n - 1] - x0
        yi = yv[i + n - 1] - y0
        sx += xi
        sy += yi
        sxx += xi * xi
        sxy += xi * yi
        out[i] = (n * sxy - sx * sy) / (n * sxx - sx * sx)
    return out_arr
