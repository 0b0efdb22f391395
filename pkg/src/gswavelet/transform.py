"""Continuous wavelet transform on the upper half-space.

``W_psi f(b, a) = a^-n int f(x) conj(psi((x - b)/a)) dx`` is computed per
scale in the Fourier domain as the inverse transform of
``conj(psi^(a xi)) f^(xi)``, optionally times ``(i xi)^beta`` for
b-derivatives.  :func:`cwt_direct` evaluates the defining integral by the
trapezoid rule on the periodic grid and serves as an independent oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._direct import PeriodicKernel, SpatialTable, UnderresolvedScaleWarning, check_resolution
from .errors import AliasingError, GridError, ParameterError
from .grid_io import (FrequencyGrid, HalfSpaceField, SampledSignal, ScaleGrid, fft_slabs,
                      forward_fft)
from .wavelet_design import WaveletSpec

MAX_DERIVATIVE = 8

__all__ = ["TransformRequest", "cwt_fourier", "cwt_direct", "partial_fourier",
           "UnderresolvedScaleWarning", "dilated_spectra", "derivative_symbol"]


def _as_multi_index(beta, dim):
    if beta is None:
        return (0,) * dim
    beta = tuple(int(b) for b in np.atleast_1d(beta))
    if len(beta) != dim or any(b < 0 for b in beta):
        raise ParameterError(f"derivative order must be {dim} nonnegative integers, got {beta}")
    return beta


@dataclass(frozen=True)
class TransformRequest:
    signal: SampledSignal
    wavelet: WaveletSpec
    agrid: ScaleGrid
    derivative_order: tuple = None

    def __post_init__(self):
        dim = self.signal.grid.dim
        beta = _as_multi_index(self.derivative_order, dim)
        if sum(beta) > MAX_DERIVATIVE:
            raise ParameterError(f"|beta| must not exceed {MAX_DERIVATIVE}, got {sum(beta)}")
        object.__setattr__(self, "derivative_order", beta)
        check_compatible(self.signal.grid, self.wavelet)


def check_compatible(grid, wavelet: WaveletSpec):
    if wavelet.dim != grid.dim:
        raise GridError(f"{wavelet.dim}D wavelet applied on a {grid.dim}D grid")
    if wavelet.profile is None and wavelet.grid != grid:
        raise GridError("sampled-only wavelet must live on the signal grid")


def check_aliasing(wavelet: WaveletSpec, agrid: ScaleGrid, grid):
    """Raise when the dilated support ``|xi| < r_hi/a_k`` passes the Nyquist frequency."""
    nyq = FrequencyGrid(grid).nyquist
    r_hi = wavelet.support_radii()[1]
    for k, a in enumerate(agrid.values):
        if r_hi / a >= nyq:
            raise AliasingError(f"scale index {k} (a={a:.4g}) pushes the wavelet support "
                                f"{r_hi / a:.4g} past the Nyquist frequency {nyq:.4g}", k)


def dilated_spectra(wavelet: WaveletSpec, agrid: ScaleGrid, grid) -> np.ndarray:
    """``psi^(a_k xi)`` on the frequency lattice, shape ``(K,) + grid.shape``."""
    xi = FrequencyGrid(grid).mesh()
    out = np.empty((agrid.count,) + grid.shape, dtype=np.complex128)
    for k, a in enumerate(agrid.values):
        out[k] = wavelet.evaluate(a * xi)
    return out


def derivative_symbol(grid, beta) -> np.ndarray:
    """``(i xi)^beta`` on the frequency lattice."""
    axes = FrequencyGrid(grid).axes
    sym = np.ones(grid.shape, dtype=np.complex128)
    for ax, (xi, b) in enumerate(zip(axes, beta)):
        if b:
            shape = [1] * grid.dim
            shape[ax] = grid.n
            sym = sym * ((1j * xi) ** b).reshape(shape)
    return sym


def cwt_fourier(req: TransformRequest) -> HalfSpaceField:
    """Wavelet transform of ``req.signal`` at every node of ``req.agrid``."""
    grid = req.signal.grid
    check_aliasing(req.wavelet, req.agrid, grid)
    fhat = forward_fft(req.signal).values
    if any(req.derivative_order):
        fhat = fhat * derivative_symbol(grid, req.derivative_order)
    prod = np.conj(dilated_spectra(req.wavelet, req.agrid, grid)) * fhat
    return HalfSpaceField(grid, req.agrid, fft_slabs(prod, grid, inverse=True))


def partial_fourier(field: HalfSpaceField, forward=True) -> HalfSpaceField:
    """Fourier transform in ``b`` at every scale."""
    want = "space" if forward else "frequency"
    if field.domain != want:
        raise ParameterError(f"field is already in the {field.domain} domain")
    vals = fft_slabs(field.values, field.sgrid, inverse=not forward)
    return HalfSpaceField(field.sgrid, field.agrid, vals, "frequency" if forward else "space")


def cwt_direct(f: SampledSignal, w: WaveletSpec, points, table: SpatialTable = None) -> np.ndarray:
    """Trapezoid quadrature of ``a^-n int f(x) conj(psi((x-b)/a)) dx`` at ``(b, a)`` points.

    ``points`` is a sequence of ``(b, a)`` with ``b`` a scalar (1D) or a pair
    (2D).  Issues :class:`UnderresolvedScaleWarning` for scales the signal
    grid cannot resolve.
    """
    grid = f.grid
    check_compatible(grid, w)
    table = SpatialTable(w) if table is None else table
    kern = PeriodicKernel(table, grid)
    r_hi = w.support_radii()[1]
    warned = set()
    out = np.empty(len(points), dtype=np.complex128)
    for i, (b, a) in enumerate(points):
        if a not in warned:
            check_resolution(a, r_hi, grid)
            warned.add(a)
        psi = kern.samples(b, a)
        out[i] = np.sum(f.values * np.conj(psi)) * grid.cell_volume
    return out
