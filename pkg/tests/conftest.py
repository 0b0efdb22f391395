import pytest

from gswavelet.grid_io import ScaleGrid, SignalGrid
from gswavelet.reconstruction import build_reconstruction_wavelet
from gswavelet.wavelet_design import GevreyIndices, design_directional_wavelet

from _support import bump_signal


@pytest.fixture(scope="session")
def grid1():
    return SignalGrid(1, 1024, 32.0)


@pytest.fixture(scope="session")
def grid2():
    return SignalGrid(2, 64, 16.0)


@pytest.fixture(scope="session")
def band():
    return ScaleGrid(1 / 16, 16.0, 64)


@pytest.fixture(scope="session")
def indices():
    return GevreyIndices(0.5, 2.0)


@pytest.fixture(scope="session")
def psi1(grid1, indices):
    return design_directional_wavelet(1, indices, grid1)


@pytest.fixture(scope="session")
def psi2(grid2, indices):
    return design_directional_wavelet(2, indices, grid2)


@pytest.fixture(scope="session")
def pair1(psi1):
    return build_reconstruction_wavelet(psi1)


@pytest.fixture(scope="session")
def pair2(psi2):
    return build_reconstruction_wavelet(psi2)


@pytest.fixture(scope="session")
def f1(grid1):
    return bump_signal(grid1)
