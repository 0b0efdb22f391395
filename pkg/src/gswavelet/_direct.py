"""Spatial-domain wavelet sampling for the direct quadrature oracles.

The continuous wavelet ``psi(y)`` is tabulated on a fine grid that is wide
enough for ``|psi|`` to fall below a relative tolerance, then read back by
six-point Lagrange interpolation.  Oracles need the periodisation of the
dilated wavelet on the signal torus,

    psi_a^per(y) = a^-d sum_k psi((y + 2 L k) / a),

which is what the defining integral becomes under the trapezoid rule on a
periodic grid.
"""

from __future__ import annotations

import math
import warnings

import numpy as np

from . import _kernels
from .grid_io import FrequencyGrid, SampledSpectrum, SignalGrid, inverse_fft


class UnderresolvedScaleWarning(UserWarning):
    """The dilated wavelet oscillates faster than the signal grid resolves."""


class TableTruncationWarning(UserWarning):
    pass


MAX_TABLE_POINTS = {1: 2 ** 20, 2: 2 ** 11}
# 2D tables are kept coarse and short: the interpolation error at eight
# points per half-period is already below 1e-7 relative
DEFAULT_OVERSAMPLE = {1: 64, 2: 8}
DEFAULT_TAIL = {1: 1e-12, 2: 1e-6}


class SpatialTable:
    """Fine spatial table of a wavelet given by its spectrum.

    Parameters
    ----------
    wavelet : WaveletSpec
    oversample : int, optional
        Table points per half-period of the highest frequency in the support.
    tol : float, optional
        Relative magnitude below which the table may be truncated.
    half_extent : float, optional
        Fixed table half-width; by default the table doubles until the tail
        falls below ``tol``.
    """

    def __init__(self, wavelet, oversample=None, tol=None, half_extent=None):
        self.dim = wavelet.dim
        oversample = DEFAULT_OVERSAMPLE[self.dim] if oversample is None else oversample
        tol = DEFAULT_TAIL[self.dim] if tol is None else tol
        r_hi = wavelet.support_radii()[1]
        if not r_hi > 0:
            raise ValueError("wavelet spectrum has empty support")
        h_target = math.pi / (r_hi * oversample)
        cap = MAX_TABLE_POINTS[self.dim]
        half = 64.0 / r_hi if half_extent is None else float(half_extent)
        while True:
            m = 1 << max(4, math.ceil(math.log2(2 * half / h_target)))
            table = self._build(wavelet, SignalGrid(self.dim, m, half))
            if half_extent is not None:
                break
            tail = self._tail(table, half)
            if tail <= tol:
                break
            if 2 * m > cap:
                warnings.warn(f"wavelet table truncated with relative tail {tail:.2e}",
                              TableTruncationWarning, stacklevel=2)
                break
            half *= 2.0
        self.table = table
        self.half_extent = half
        self.step = 2 * half / m

    def _build(self, wavelet, grid):
        spec = wavelet.evaluate(FrequencyGrid(grid).mesh())
        return np.ascontiguousarray(inverse_fft(SampledSpectrum(grid, spec)).values)

    def _tail(self, table, half):
        m = table.shape[0]
        ax = -half + (2 * half / m) * np.arange(m)
        outer = np.abs(ax) >= 0.85 * half
        mag = np.abs(table)
        peak = mag.max()
        if peak == 0:
            return 0.0
        if self.dim == 1:
            return float(mag[outer].max() / peak)
        band = outer[:, None] | outer[None, :]
        return float(mag[band].max() / peak)

    def reflected(self) -> "SpatialTable":
        """Table of ``y -> psi(-y)`` on the same nodes."""
        out = object.__new__(SpatialTable)
        out.__dict__.update(self.__dict__)
        axes = tuple(range(self.dim))
        out.table = np.ascontiguousarray(np.roll(np.flip(self.table, axes), 1, axes))
        return out

    def __call__(self, ys):
        """Un-dilated, non-periodised ``psi`` at points ``ys`` of shape ``(..., dim)``."""
        ys = np.asarray(ys, dtype=float)
        out = _kernels.periodized_sample(self.table, -self.half_extent, self.step,
                                         ys.reshape(-1, self.dim), 1.0, 1.0, 0)
        return out.reshape(ys.shape[:-1])

    def periodized(self, ys, scale, period):
        """``psi_a^per`` at points ``ys`` (shape ``(P, dim)``) for period ``period``."""
        kmax = int(math.ceil(scale * self.half_extent / period)) + 1
        return _kernels.periodized_sample(self.table, -self.half_extent, self.step,
                                          np.asarray(ys, dtype=float).reshape(-1, self.dim),
                                          scale, period, kmax)


class PeriodicKernel:
    """Caches ``psi_a^per(x_j - b)`` over all grid nodes ``x_j``.

    Offsets ``b`` are reduced modulo the grid spacing; grid-aligned offsets
    then become circular index shifts of a single cached table per scale.
    """

    def __init__(self, table: SpatialTable, grid: SignalGrid):
        self.table = table
        self.grid = grid
        self._cache = {}

    def _base(self, scale, frac):
        key = (float(scale), tuple(frac))
        if key not in self._cache:
            g = self.grid
            offs = g.spacing * np.arange(g.n)
            mesh = np.stack(np.meshgrid(*([offs] * g.dim), indexing="ij"), axis=-1)
            ys = mesh - np.asarray(frac)
            vals = self.table.periodized(ys.reshape(-1, g.dim), scale, 2 * g.half_extent)
            self._cache[key] = vals.reshape(g.shape)
        return self._cache[key]

    def samples(self, b, scale):
        """``psi_a^per(x_j - b)`` as an array of the grid shape."""
        g = self.grid
        b = np.atleast_1d(np.asarray(b, dtype=float))
        rel = (b + g.half_extent) / g.spacing
        shift = np.floor(rel + 1e-9).astype(int)
        frac = (rel - shift) * g.spacing
        frac[np.abs(frac) < 1e-12 * g.spacing] = 0.0
        base = self._base(scale, frac)
        # x_j - b = (j - shift) dx - frac
        return np.roll(base, tuple(shift % g.n), axis=tuple(range(g.dim)))


def check_resolution(scale, r_hi, grid: SignalGrid):
    # fewer than four samples per period of the fastest oscillation
    if scale * 2 * math.pi / r_hi < 4 * grid.spacing:
        warnings.warn(f"scale {scale:.4g} is under-resolved by grid spacing {grid.spacing:.4g}",
                      UnderresolvedScaleWarning, stacklevel=3)
        return True
    return False
