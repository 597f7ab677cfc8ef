# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; see _kernels_py for the reference implementations."""

from libc.math cimport cos, sin, exp, fabs

import numpy as np


def encode_batch(double[::1] phi, Py_ssize_t n_step):
    """cos(phi + 2*pi*n/n_step) for n = 1..n_step, shape (len(phi), n_step)."""
    cdef Py_ssize_t m = phi.shape[0]
    shifts_arr = 2.0 * np.pi * np.arange(1, n_step + 1) / n_step
    out = np.empty((m, n_step), dtype=np.float64)
    cdef double[::1] shifts = shifts_arr
    cdef double[:, ::1] o = out
    cdef Py_ssize_t i, n
    for i in range(m):
        for n in range(n_step):
            o[i, n] = cos(phi[i] + shifts[n])
    return out


def decode_sums(double[:, ::1] codes):
    """Quadrature sums of each code row against the sampling offsets."""
    cdef Py_ssize_t m = codes.shape[0]
    cdef Py_ssize_t n_step = codes.shape[1]
    ang = 2.0 * np.pi * np.arange(1, n_step + 1) / n_step
    sin_arr = np.sin(ang)
    cos_arr = np.cos(ang)
    s_out = np.empty(m, dtype=np.float64)
    c_out = np.empty(m, dtype=np.float64)
    cdef double[::1] sc = sin_arr
    cdef double[::1] cc = cos_arr
    cdef double[::1] so = s_out
    cdef double[::1] co = c_out
    cdef Py_ssize_t i, n
    cdef double s, c
    for i in range(m):
        s = 0.0
        c = 0.0
        for n in range(n_step):
            s += codes[i, n] * sc[n]
            c += codes[i, n] * cc[n]
        so[i] = s
        co[i] = c
    return s_out, c_out


def squash(double[::1] x):
    """2*sigmoid(x) - 1 elementwise, stable on both tails."""
    cdef Py_ssize_t m = x.shape[0]
    out = np.empty(m, dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t i
    cdef double v, t
    for i in range(m):
        v = x[i]
        if v >= 0.0:
            t = exp(-v)
            o[i] = 2.0 / (1.0 + t) - 1.0
        else:
            t = exp(v)
            o[i] = 2.0 * t / (1.0 + t) - 1.0
    return out


def squash_grad(double[::1] x):
    """Derivative of squash: 2*t/(1+t)^2 with t = exp(-|x|)."""
    cdef Py_ssize_t m = x.shape[0]
    out = np.empty(m, dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t i
    cdef double t
    for i in range(m):
        t = exp(-fabs(x[i]))
        o[i] = 2.0 * t / ((1.0 + t) * (1.0 + t))
    return out
