"""Pure numpy implementations of the hot kernels.

These mirror the compiled versions in ``_fast.pyx`` exactly (same stencil,
same image ordering) and serve as the fallback when the extension is not
built.
"""

import numpy as np

_NODES = np.arange(-2, 4)


def lagrange6_weights(s):
    """Six-point Lagrange weights for nodes -2..3 at fractional offsets ``s``."""
    s = np.asarray(s, dtype=float)[..., None]
    w = np.ones(s.shape[:-1] + (6,))
    for m in range(6):
        for n in range(6):
            if n != m:
                w[..., m] *= (s[..., 0] - _NODES[n]) / (_NODES[m] - _NODES[n])
    return w


def _interp_1d(table, t):
    m = table.shape[0]
    i0 = np.floor(t).astype(np.int64)
    ok = (i0 >= 2) & (i0 + 3 <= m - 1)
    out = np.zeros(t.shape, dtype=np.complex128)
    if not np.any(ok):
        return out
    w = lagrange6_weights(t[ok] - i0[ok])
    idx = i0[ok][:, None] + _NODES[None, :]
    out[ok] = np.sum(w * table[idx], axis=-1)
    return out


def _interp_2d(table, t1, t2):
    m1, m2 = table.shape
    i1 = np.floor(t1).astype(np.int64)
    i2 = np.floor(t2).astype(np.int64)
    ok = (i1 >= 2) & (i1 + 3 <= m1 - 1) & (i2 >= 2) & (i2 + 3 <= m2 - 1)
    out = np.zeros(t1.shape, dtype=np.complex128)
    if not np.any(ok):
        return out
    w1 = lagrange6_weights(t1[ok] - i1[ok])
    w2 = lagrange6_weights(t2[ok] - i2[ok])
    idx1 = i1[ok][:, None] + _NODES[None, :]
    idx2 = i2[ok][:, None] + _NODES[None, :]
    block = table[idx1[:, :, None], idx2[:, None, :]]
    out[ok] = np.einsum("pi,pij,pj->p", w1, block, w2)
    return out


def periodized_sample_1d(table, y0, hy, ys, scale, period, kmax):
    ys = np.asarray(ys, dtype=float)
    out = np.zeros(ys.shape, dtype=np.complex128)
    for k in range(-kmax, kmax + 1):
        t = ((ys + k * period) / scale - y0) / hy
        out += _interp_1d(table, t)
    return out / scale


def periodized_sample_2d(table, y0, hy, ys, scale, period, kmax):
    ys = np.asarray(ys, dtype=float)
    out = np.zeros(ys.shape[0], dtype=np.complex128)
    for k1 in range(-kmax, kmax + 1):
        t1 = ((ys[:, 0] + k1 * period) / scale - y0) / hy
        for k2 in range(-kmax, kmax + 1):
            t2 = ((ys[:, 1] + k2 * period) / scale - y0) / hy
            out += _interp_2d(table, t1, t2)
    return out / scale ** 2


def dtft_1d(samples, x0, dx, xi, chunk=4096):
    samples = np.asarray(samples, dtype=np.complex128)
    xi = np.asarray(xi, dtype=float)
    x = x0 + dx * np.arange(samples.shape[0])
    out = np.empty(xi.shape[0], dtype=np.complex128)
    for s in range(0, xi.shape[0], chunk):
        out[s:s + chunk] = np.exp(-1j * np.outer(xi[s:s + chunk], x)) @ samples
    return out


def dtft_2d(samples, x0, dx, xi, chunk=512):
    samples = np.asarray(samples, dtype=np.complex128)
    xi = np.asarray(xi, dtype=float)
    x = x0 + dx * np.arange(samples.shape[0])
    out = np.empty(xi.shape[0], dtype=np.complex128)
    for s in range(0, xi.shape[0], chunk):
        e1 = np.exp(-1j * np.outer(xi[s:s + chunk, 0], x))
        e2 = np.exp(-1j * np.outer(xi[s:s + chunk, 1], x))
        out[s:s + chunk] = np.einsum("pi,ij,pj->p", e1, samples, e2)
    return out
