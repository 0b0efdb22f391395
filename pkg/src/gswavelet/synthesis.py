"""The wavelet synthesis operator

    M_phi Phi(x) = int_0^inf int Phi(b, a) a^-n phi((x - b)/a) db da/a.

The ``da/a`` integral is the composite trapezoid rule in ``log a`` over the
scale grid; the ``b`` integral is a convolution, done exactly on the
frequency lattice by :func:`synthesis_fourier` and by direct summation in
:func:`synthesis_direct`.
"""

from __future__ import annotations

import numpy as np

from ._direct import PeriodicKernel, SpatialTable, check_resolution
from .errors import GridError
from .grid_io import HalfSpaceField, SampledSignal, fft_slabs, inverse_fft, SampledSpectrum
from .transform import check_aliasing, check_compatible, dilated_spectra
from .wavelet_design import WaveletSpec


def _spectral_slabs(field: HalfSpaceField):
    if field.domain == "frequency":
        return field.values
    return fft_slabs(field.values, field.sgrid)


def synthesis_fourier(field: HalfSpaceField, phi: WaveletSpec) -> SampledSignal:
    """``M_phi Phi`` via ``F[M_phi Phi] = sum_k w_k F_1 Phi(., a_k) phi^(a_k .)``."""
    grid = field.sgrid
    check_compatible(grid, phi)
    check_aliasing(phi, field.agrid, grid)
    w = field.agrid.weights()
    prod = _spectral_slabs(field) * dilated_spectra(phi, field.agrid, grid)
    spec = np.tensordot(w, prod, axes=(0, 0))
    return inverse_fft(SampledSpectrum(grid, spec))


def synthesis_direct(field: HalfSpaceField, phi: WaveletSpec, points,
                     table: SpatialTable = None) -> np.ndarray:
    """Direct double quadrature of ``M_phi Phi`` at the given ``x`` points."""
    if field.domain != "space":
        raise GridError("direct synthesis needs a field sampled in b")
    grid = field.sgrid
    check_compatible(grid, phi)
    check_aliasing(phi, field.agrid, grid)
    table = SpatialTable(phi) if table is None else table
    # phi((x - b_j)/a) read as the reflected wavelet at b_j - x
    kern = PeriodicKernel(table.reflected(), grid)
    r_hi = phi.support_radii()[1]
    weights = field.agrid.weights()
    for a in field.agrid.values:
        check_resolution(a, r_hi, grid)
    out = np.zeros(len(points), dtype=np.complex128)
    for i, x in enumerate(points):
        acc = 0j
        for k, a in enumerate(field.agrid.values):
            acc += weights[k] * np.sum(field.values[k] * kern.samples(x, a))
        out[i] = acc * grid.cell_volume
    return out
