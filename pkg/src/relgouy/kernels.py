"""Hot numeric kernels with a numba path and a numpy fallback.

Every Hermite-Gaussian field in the package (relativistic, Schrodinger, either
convention) is evaluated by :func:`hg_field`. The axial argument ``s`` is the
Bateman combination xi3 + c*tau for the relativistic modes and tau for the
Schrodinger modes.

The field is

    amp * (w0/w) * H_m(sqrt2 xi1/w) * H_n(sqrt2 xi2/w)
        * exp(i a r^2 / (s - i z0) - i (1+m+n) arctan(s/wscale))

with ``w = w0 * sqrt(1 + (s/wscale)**2)``.
"""

import numpy as np

from ._accel import USE_NUMBA, njit

SQRT2 = np.sqrt(2.0)


def hermite_array_numpy(n, x):
    x = np.asarray(x, dtype=np.float64)
    h_prev = np.ones_like(x)
    if n == 0:
        return h_prev
    h = 2.0 * x
    for k in range(1, n):
        h_prev, h = h, 2.0 * x * h - 2.0 * k * h_prev
    return h


def hg_field_numpy(xi1, xi2, s, m, n, w0, amp, a, z0, wscale):
    xi1 = np.asarray(xi1, dtype=np.float64)
    xi2 = np.asarray(xi2, dtype=np.float64)
    s = np.asarray(s, dtype=np.float64)
    arg = s / wscale
    root = np.sqrt(1.0 + arg * arg)
    w = w0 * root
    r2 = xi1 * xi1 + xi2 * xi2
    den = s * s + z0 * z0
    re = -a * r2 * z0 / den
    ph = a * r2 * s / den - (1 + m + n) * np.arctan(arg)
    mag = amp / root * hermite_array_numpy(m, SQRT2 * xi1 / w) * hermite_array_numpy(n, SQRT2 * xi2 / w)
    mag = mag * np.exp(re)
    out = np.empty(mag.shape, dtype=np.complex128)
    out.real = mag * np.cos(ph)
    out.imag = mag * np.sin(ph)
    return out


if USE_NUMBA:

    @njit(cache=True, nogil=True)
    def _hermite_scalar_nb(n, x):
        h_prev = 1.0
        if n == 0:
            return h_prev
        h = 2.0 * x
        for k in range(1, n):
            h_prev, h = h, 2.0 * x * h - 2.0 * k * h_prev
        return h

    @njit(cache=True, nogil=True)
    def _hermite_array_nb(n, x):
        out = np.empty(x.size, dtype=np.float64)
        for i in range(x.size):
            out[i] = _hermite_scalar_nb(n, x[i])
        return out

    @njit(cache=True, nogil=True)
    def _hg_field_nb(xi1, xi2, s, m, n, w0, amp, a, z0, wscale):
        out = np.empty(s.size, dtype=np.complex128)
        order = 1 + m + n
        for i in range(s.size):
            arg = s[i] / wscale
            root = np.sqrt(1.0 + arg * arg)
            w = w0 * root
            r2 = xi1[i] * xi1[i] + xi2[i] * xi2[i]
            den = s[i] * s[i] + z0 * z0
            re = -a * r2 * z0 / den
            ph = a * r2 * s[i] / den - order * np.arctan(arg)
            mag = amp / root * _hermite_scalar_nb(m, SQRT2 * xi1[i] / w) * _hermite_scalar_nb(n, SQRT2 * xi2[i] / w)
            mag = mag * np.exp(re)
            out[i] = complex(mag * np.cos(ph), mag * np.sin(ph))
        return out

    def hermite_array_numba(n, x):
        x = np.asarray(x, dtype=np.float64)
        return _hermite_array_nb(int(n), np.ascontiguousarray(x).ravel()).reshape(x.shape)

    def hg_field_numba(xi1, xi2, s, m, n, w0, amp, a, z0, wscale):
        xi1, xi2, s = np.broadcast_arrays(
            np.asarray(xi1, dtype=np.float64), np.asarray(xi2, dtype=np.float64), np.asarray(s, dtype=np.float64)
        )
        shape = s.shape
        out = _hg_field_nb(
            np.ascontiguousarray(xi1).ravel(),
            np.ascontiguousarray(xi2).ravel(),
            np.ascontiguousarray(s).ravel(),
            int(m), int(n), float(w0), float(amp), float(a), float(z0), float(wscale),
        )
        return out.reshape(shape)

    hermite_array = hermite_array_numba
    hg_field = hg_field_numba
else:
    hermite_array_numba = None
    hg_field_numba = None
    hermite_array = hermite_array_numpy
    hg_field = hg_field_numpy
