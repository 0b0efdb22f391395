import numpy as np
import pytest

from gswavelet.errors import GridError, ParameterError, ResolutionError, TrivialWaveletError
from gswavelet.grid_io import FrequencyGrid, SampledSpectrum, SignalGrid
from gswavelet.profiles import BallBump, FunctionProfile, GevreyBump, RadialBump
from gswavelet.wavelet_design import (GevreyIndices, WaveletSpec, check_nondegenerate,
                                      check_vanishing_moments, design_directional_wavelet,
                                      fit_spatial_decay, fornberg_weights, lattice_moments,
                                      radial_wavelet, wavelet_from_profile, wavelet_from_spectrum)


def test_indices_validation():
    with pytest.raises(ParameterError):
        GevreyIndices(0.0, 2.0)
    with pytest.raises(ParameterError):
        GevreyIndices(0.5, 1.0)


def test_directional_1d_support(psi1):
    xi = FrequencyGrid(psi1.grid).axes[0]
    spec = psi1.spectrum.values
    assert np.all(spec[np.abs(xi) >= 1] == 0)
    assert spec[psi1.grid.n // 2] == 0
    assert np.all(spec[(np.abs(xi) > 0) & (np.abs(xi) < 1)] > 0)
    assert psi1.support_radii() == (0.0, 1.0)


def test_directional_2d_four_balls(psi2):
    pts = np.array([[0.5, 0], [-0.5, 0], [0, 0.5], [0, -0.5], [0.5, 0.5], [0.0, 0.0]])
    v = psi2.evaluate(pts)
    np.testing.assert_allclose(v[:4], 1.0)
    assert v[4] == 0 and v[5] == 0


def test_directional_unresolved_grid(indices):
    with pytest.raises(GridError):
        design_directional_wavelet(1, indices, SignalGrid(1, 16, 32.0))
    with pytest.raises(GridError):
        design_directional_wavelet(2, indices, SignalGrid(1, 1024, 32.0))


@pytest.mark.parametrize("name", ["psi1", "psi2"])
def test_space_wavelet_real_and_even(name, request):
    psi = request.getfixturevalue(name).space_values().values
    scale = np.max(np.abs(psi))
    assert np.max(np.abs(psi.imag)) <= 1e-12 * scale
    inner = psi[(slice(1, None),) * psi.ndim]
    flipped = inner[(slice(None, None, -1),) * psi.ndim]
    assert np.max(np.abs(inner - flipped)) <= 1e-12 * scale


def test_moments_designed(psi1, psi2):
    for psi in (psi1, psi2):
        rep = check_vanishing_moments(psi, 10, 1e-8)
        assert rep.verdict
        assert max(rep.moment_bounds) <= 1e-8


def test_moments_gaussian_spectrum(grid1, indices):
    w = wavelet_from_profile(FunctionProfile(lambda xi: np.exp(-xi[..., 0] ** 2 / 2), 1),
                             grid1, indices)
    rep = check_vanishing_moments(w, 4, 1e-8)
    assert not rep.verdict
    assert rep.moment_bounds[0] == pytest.approx(1.0, rel=1e-8)


def test_moments_xi_squared_gaussian(grid1, indices):
    w = wavelet_from_profile(
        FunctionProfile(lambda xi: xi[..., 0] ** 2 * np.exp(-xi[..., 0] ** 2), 1), grid1, indices)
    rep = check_vanishing_moments(w, 4, 1e-8)
    b = rep.moment_bounds
    assert b[0] < 1e-10 and b[1] < 1e-10 and b[3] < 1e-8
    # d^2/dxi^2 and d^4/dxi^4 of xi^2 - xi^4 + ... at 0
    assert b[2] == pytest.approx(2.0, rel=1e-6)
    assert b[4] == pytest.approx(24.0, rel=1e-4)
    assert not rep.verdict
    assert check_vanishing_moments(w, 1, 1e-8).verdict


def test_moments_sampled_only(psi1, grid1, indices):
    # the lattice stencil must fit inside the gap of the spectrum around 0
    g = SignalGrid(1, 1024, 128.0)
    w = wavelet_from_spectrum(radial_wavelet(1, indices, g).spectrum, indices)
    assert check_vanishing_moments(w, 10, 1e-8).verdict
    fg = FrequencyGrid(grid1).axes[0]
    gauss = wavelet_from_spectrum(SampledSpectrum(grid1, np.exp(-fg ** 2 / 2)), indices)
    rep = check_vanishing_moments(gauss, 2, 1e-8)
    assert not rep.verdict and rep.moment_bounds[0] == pytest.approx(1.0)
    assert lattice_moments(w.spectrum, 10).max() == 0


def test_moments_stable_under_refinement(indices):
    for n in (512, 1024):
        w = design_directional_wavelet(1, indices, SignalGrid(1, n, 32.0))
        assert check_vanishing_moments(w, 10, 1e-8).verdict


def test_moment_errors(psi1, grid1, indices):
    with pytest.raises(ResolutionError):
        check_vanishing_moments(psi1, 13)
    zero = wavelet_from_spectrum(SampledSpectrum(grid1, np.zeros(grid1.n)), indices)
    with pytest.raises(TrivialWaveletError):
        check_vanishing_moments(zero)
    with pytest.raises(TrivialWaveletError):
        check_nondegenerate(zero)


def test_fornberg_weights_reproduce_polynomials():
    nodes = np.arange(-3, 4)
    w = fornberg_weights(nodes, 4)
    assert np.dot(w, nodes ** 4.0) == pytest.approx(24.0)
    assert np.dot(w, nodes ** 2.0) == pytest.approx(0.0, abs=1e-12)


def test_nondegenerate_directional_1d(psi1):
    rep = check_nondegenerate(psi1, 2, 256, 1e-8)
    assert rep.verdict
    np.testing.assert_allclose(rep.masses, [1.0, 1.0], rtol=1e-8)


def test_nondegenerate_one_sided(grid1, indices):
    w = wavelet_from_profile(BallBump(2, (0.75,), 0.25), grid1, indices)
    rep = check_nondegenerate(w)
    assert not rep.verdict
    assert rep.worst_direction == (-1.0,)
    assert rep.worst_mass == 0


def test_nondegenerate_single_2d_bump(grid2, indices):
    w = wavelet_from_profile(BallBump(2, (0.5, 0.0), 0.5), grid2, indices)
    rep = check_nondegenerate(w, 256)
    assert not rep.verdict and rep.worst_mass == 0
    assert rep.masses[128] == 0 and rep.masses[0] == pytest.approx(1.0)
    assert check_nondegenerate(design_directional_wavelet(2, indices, grid2)).verdict


def test_radial_wavelet(grid2, indices):
    w = radial_wavelet(2, indices, grid2)
    assert w.support_radii() == (0.25, 1.0)
    assert check_vanishing_moments(w, 10).verdict
    with pytest.raises(ParameterError):
        radial_wavelet(2, indices, grid2, r0=0.0)


def test_spatial_decay_fit(indices):
    g = SignalGrid(1, 4096, 128.0)
    w = design_directional_wavelet(1, indices, g)
    h, c, r2 = fit_spatial_decay(w, 2.0, 64.0)
    assert h > 0 and c > 0
    assert r2 >= 0.95


def test_sampled_spectrum_interpolation(indices):
    g = SignalGrid(1, 4096, 128.0)
    w = design_directional_wavelet(1, indices, g)
    s = wavelet_from_spectrum(w.spectrum, indices)
    xi = np.random.default_rng(0).uniform(-1.2, 1.2, (200, 1))
    np.testing.assert_allclose(s.evaluate(xi), w.evaluate(xi), atol=1e-5)
    lo, hi = s.support_radii()
    assert lo == 0.0 and 1.0 <= hi <= 1.0 + 2 * np.pi / 256


def test_wavelet_dict_round_trip(psi1, psi2, indices, grid1):
    for psi in (psi1, psi2):
        d = psi.to_dict()
        assert d["spectrum"] is None
        back = WaveletSpec.from_dict(d)
        assert back.spectrum.values.tobytes() == psi.spectrum.values.tobytes()
        emb = WaveletSpec.from_dict(psi.to_dict(embed_spectrum=True))
        assert emb.spectrum.values.tobytes() == psi.spectrum.values.tobytes()
    sampled = wavelet_from_spectrum(psi1.spectrum, indices)
    back = WaveletSpec.from_dict(sampled.to_dict())
    assert back.profile is None
    assert back.spectrum.values.tobytes() == psi1.spectrum.values.tobytes()
    with pytest.raises(ParameterError):
        WaveletSpec.from_dict({"label": "x"})


def test_conjugate_of_real_wavelet(psi1):
    c = psi1.conjugate()
    np.testing.assert_allclose(c.spectrum.values, psi1.spectrum.values, atol=1e-15)


def test_conjugate_of_complex_profile(grid1, indices):
    w = wavelet_from_profile(RadialBump(GevreyBump(2, 0.25, 1.0), 1), grid1, indices)
    w = w.scaled(1j)
    xi = np.array([[0.5], [-0.4]])
    np.testing.assert_allclose(w.conjugate().evaluate(xi), np.conj(w.evaluate(-xi)))
