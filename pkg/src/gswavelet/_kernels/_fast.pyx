# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot loops: periodised table lookup and direct DTFT sums."""

import numpy as np
from libc.math cimport floor, sin, cos


cdef inline void _lagrange6(double s, double* w) noexcept nogil:
    cdef int m, n
    cdef double acc
    for m in range(6):
        acc = 1.0
        for n in range(6):
            if n != m:
                acc *= (s - (n - 2)) / (m - n)
        w[m] = acc


cdef inline double complex _interp1(const double complex[::1] table, Py_ssize_t size,
                                    double t) noexcept nogil:
    cdef double fl = floor(t)
    cdef Py_ssize_t i0 = <Py_ssize_t>fl
    cdef double w[6]
    cdef double complex acc = 0
    cdef int m
    if i0 < 2 or i0 + 3 > size - 1:
        return 0
    _lagrange6(t - fl, w)
    for m in range(6):
        acc = acc + w[m] * table[i0 - 2 + m]
    return acc


def periodized_sample_1d(const double complex[::1] table, double y0, double hy,
                         const double[::1] ys, double scale, double period, int kmax):
    cdef Py_ssize_t p, npts = ys.shape[0], size = table.shape[0]
    cdef int k
    cdef double complex acc
    out = np.zeros(npts, dtype=np.complex128)
    cdef double complex[::1] o = out
    with nogil:
        for p in range(npts):
            acc = 0
            for k in range(-kmax, kmax + 1):
                acc = acc + _interp1(table, size, ((ys[p] + k * period) / scale - y0) / hy)
            o[p] = acc / scale
    return out


def periodized_sample_2d(const double complex[:, ::1] table, double y0, double hy,
                         const double[:, ::1] ys, double scale, double period, int kmax):
    cdef Py_ssize_t p, npts = ys.shape[0]
    cdef Py_ssize_t m1 = table.shape[0], m2 = table.shape[1]
    cdef Py_ssize_t i1, i2
    cdef int k1, k2, a, b
    cdef double t1, t2, f1, f2
    cdef double w1[6]
    cdef double w2[6]
    cdef double complex acc, row
    out = np.zeros(npts, dtype=np.complex128)
    cdef double complex[::1] o = out
    with nogil:
        for p in range(npts):
            acc = 0
            for k1 in range(-kmax, kmax + 1):
                t1 = ((ys[p, 0] + k1 * period) / scale - y0) / hy
                f1 = floor(t1)
                i1 = <Py_ssize_t>f1
                if i1 < 2 or i1 + 3 > m1 - 1:
                    continue
                _lagrange6(t1 - f1, w1)
                for k2 in range(-kmax, kmax + 1):
                    t2 = ((ys[p, 1] + k2 * period) / scale - y0) / hy
                    f2 = floor(t2)
                    i2 = <Py_ssize_t>f2
                    if i2 < 2 or i2 + 3 > m2 - 1:
                        continue
                    _lagrange6(t2 - f2, w2)
                    for a in range(6):
                        row = 0
                        for b in range(6):
                            row = row + w2[b] * table[i1 - 2 + a, i2 - 2 + b]
                        acc = acc + w1[a] * row
            o[p] = acc / (scale * scale)
    return out


def dtft_1d(const double complex[::1] samples, double x0, double dx, const double[::1] xi):
    cdef Py_ssize_t p, j, n = samples.shape[0], npts = xi.shape[0]
    cdef double complex acc, ph, step
    out = np.empty(npts, dtype=np.complex128)
    cdef double complex[::1] o = out
    with nogil:
        for p in range(npts):
            ph = cos(x0 * xi[p]) - 1j * sin(x0 * xi[p])
            step = cos(dx * xi[p]) - 1j * sin(dx * xi[p])
            acc = 0
            for j in range(n):
                acc = acc + samples[j] * ph
                ph = ph * step
            o[p] = acc
    return out


def dtft_2d(const double complex[:, ::1] samples, double x0, double dx, const double[:, ::1] xi):
    cdef Py_ssize_t p, i, j, n = samples.shape[0], npts = xi.shape[0]
    cdef double complex acc, row, ph1, ph2, st1, st2, base2
    out = np.empty(npts, dtype=np.complex128)
    cdef double complex[::1] o = out
    with nogil:
        for p in range(npts):
            ph1 = cos(x0 * xi[p, 0]) - 1j * sin(x0 * xi[p, 0])
            st1 = cos(dx * xi[p, 0]) - 1j * sin(dx * xi[p, 0])
            base2 = cos(x0 * xi[p, 1]) - 1j * sin(x0 * xi[p, 1])
            st2 = cos(dx * xi[p, 1]) - 1j * sin(dx * xi[p, 1])
            acc = 0
            for i in range(n):
                row = 0
                ph2 = base2
                for j in range(n):
                    row = row + samples[i, j] * ph2
                    ph2 = ph2 * st2
                acc = acc + row * ph1
                ph1 = ph1 * st1
            o[p] = acc
    return out
