"""Exception hierarchy.

Every error carries an ``exit_code`` used by the command-line front end:
1 for usage/parameter problems, 2 for numerical precondition failures,
3 for I/O problems.
"""


class GSWError(Exception):
    exit_code = 2


class ParameterError(GSWError, ValueError):
    exit_code = 1


class GridError(ParameterError):
    pass


class ResolutionError(GSWError):
    pass


class TrivialWaveletError(GSWError):
    pass


class DegenerateWaveletError(GSWError):
    """Raised when the spectrum vanishes along a sampled direction."""

    def __init__(self, message, direction=None):
        super().__init__(message)
        self.direction = direction


class ConstructionError(GSWError):
    pass


class AliasingError(GSWError):
    """A dilated spectrum reaches past the Nyquist frequency."""

    def __init__(self, message, scale_index):
        super().__init__(message)
        self.scale_index = scale_index


class NotReconstructionPairError(GSWError):
    pass


class PreconditionError(GSWError):
    pass


class TruncationError(GSWError):
    pass


class DecayFitError(GSWError):
    pass


class FormatError(GSWError):
    exit_code = 3
