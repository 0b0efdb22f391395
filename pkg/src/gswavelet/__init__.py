"""Continuous wavelet analysis on Gelfand-Shilov spaces."""

__version__ = "0.1.0"

from ._kernels import BACKEND
from ._parallel import set_threads
from .calderon import ReconstructionReport, desingularized_pairing, grid_pairing, reconstruct
from .errors import (AliasingError, ConstructionError, DecayFitError, DegenerateWaveletError,
                     FormatError, GridError, GSWError, NotReconstructionPairError,
                     ParameterError, PreconditionError, ResolutionError, TrivialWaveletError,
                     TruncationError)
from .grid_io import (FrequencyGrid, HalfSpaceField, SampledSignal, SampledSpectrum, ScaleGrid,
                      SignalGrid, forward_fft, inverse_fft, read_array_file, write_array_file)
from .reconstruction import (ReconstructionPair, admissibility_constant,
                             build_reconstruction_wavelet, self_pair)
from .seminorms import (HalfSpaceIndices, decay_fit, gs_seminorm, gs_sweep,
                        halfspace_seminorm_p, halfspace_seminorm_q, halfspace_sweep,
                        index_calculus)
from .synthesis import synthesis_direct, synthesis_fourier
from .transform import TransformRequest, cwt_direct, cwt_fourier, partial_fourier
from .wavelet_design import (GevreyIndices, WaveletSpec, check_nondegenerate,
                             check_vanishing_moments, design_directional_wavelet, radial_wavelet)

__all__ = [
    "BACKEND", "set_threads",
    "SignalGrid", "ScaleGrid", "FrequencyGrid", "SampledSignal", "SampledSpectrum",
    "HalfSpaceField", "forward_fft", "inverse_fft", "read_array_file", "write_array_file",
    "GevreyIndices", "WaveletSpec", "design_directional_wavelet", "radial_wavelet",
    "check_vanishing_moments", "check_nondegenerate",
    "ReconstructionPair", "build_reconstruction_wavelet", "self_pair", "admissibility_constant",
    "TransformRequest", "cwt_fourier", "cwt_direct", "partial_fourier",
    "synthesis_fourier", "synthesis_direct",
    "reconstruct", "desingularized_pairing", "grid_pairing", "ReconstructionReport",
    "HalfSpaceIndices", "gs_seminorm", "gs_sweep", "halfspace_seminorm_p",
    "halfspace_seminorm_q", "halfspace_sweep", "decay_fit", "index_calculus",
    "GSWError", "ParameterError", "GridError", "ResolutionError", "TrivialWaveletError",
    "DegenerateWaveletError", "ConstructionError", "AliasingError", "NotReconstructionPairError",
    "PreconditionError", "TruncationError", "DecayFitError", "FormatError",
]
