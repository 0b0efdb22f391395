"""Shared builders for the test suite."""

import numpy as np

from gswavelet.grid_io import HalfSpaceField, SampledSignal, ScaleGrid, SignalGrid, inverse_fft
from gswavelet.profiles import GevreyBump, RadialBump
from gswavelet.wavelet_design import sample_profile


def bump_signal(grid, lo=0.5, hi=2.0, order=2.0):
    """Real signal whose spectrum is a radial Gevrey bump on ``lo < |xi| < hi``."""
    spec = sample_profile(RadialBump(GevreyBump(order, lo, hi), grid.dim), grid)
    return SampledSignal(grid, inverse_fft(spec).values.real)


def gaussian(grid, center=0.0):
    return SampledSignal(grid, np.exp(-0.5 * np.sum((grid.mesh() - center) ** 2, axis=-1)))


def separable(sgrid, agrid, fa, gb):
    return HalfSpaceField(sgrid, agrid, np.outer(fa, gb))


def seminorm_suite():
    """The six regression fields for the p/q verdict comparison.

    Returns a list of ``(name, field, indices)``.  The first three are
    closed-form separable fields, the last three are wavelet transforms.
    """
    from gswavelet.seminorms import HalfSpaceIndices
    from gswavelet.transform import TransformRequest, cwt_fourier
    from gswavelet.wavelet_design import GevreyIndices, design_directional_wavelet

    gl = SignalGrid(1, 1024, 64.0)
    ag = ScaleGrid(1 / 16, 16, 64)
    a, b = ag.values, gl.axis()
    g = SignalGrid(1, 1024, 32.0)
    w = design_directional_wavelet(1, GevreyIndices(0.5, 2.0), g)
    f = bump_signal(g)
    f_low = bump_signal(g, 0.0, 2.0)
    wf = cwt_fourier(TransformRequest(f, w, ag))
    wf_low = cwt_fourier(TransformRequest(f_low, w, ag))
    i1 = HalfSpaceIndices(0.5, 0.5, 1.0, 1.0)
    i_w = HalfSpaceIndices(1.0, 2.0, 1.0, 2.0)
    return [
        ("separable", separable(gl, ag, np.exp(-a - 1 / a), np.exp(-b ** 2 / 2)), i1),
        ("separable-sqrt", separable(gl, ag, np.exp(-np.sqrt(a) - 1 / a), np.exp(-b ** 2 / 2)),
         HalfSpaceIndices(0.5, 0.5, 2.0, 1.0)),
        ("polynomial-b", separable(gl, ag, np.exp(-a - 1 / a), (1 + b ** 2) ** -2.0), i1),
        ("transform", wf, i_w),
        ("transform-low", wf_low, i_w),
        ("transform-small-tau2", wf, HalfSpaceIndices(1.0, 2.0, 1.0, 0.25)),
    ]
