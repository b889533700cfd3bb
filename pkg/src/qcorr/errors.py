"""Exception types raised across the toolkit."""


class QcorrError(Exception):
    """Base class for all toolkit errors."""


class NonHermitian(QcorrError):
    """Matrix expected to be Hermitian is not (beyond tolerance)."""


class NotPSD(QcorrError):
    """Matrix has an eigenvalue below the negativity tolerance."""


class DimMismatch(QcorrError):
    """Operator shape is incompatible with the declared subsystem dimensions."""


class DomainError(QcorrError):
    """Parameter outside its admissible domain."""


class InvalidState(QcorrError):
    """Density-matrix invariant violated; the message names the invariant."""


class NotUnitary(QcorrError):
    """Matrix fails the unitarity check."""


class InvalidChannel(QcorrError):
    """Kraus operators do not form a trace-preserving channel."""


class DegenerateSpectrum(QcorrError):
    """Observable spectrum has (nearly) coinciding values."""


class DegenerateMarginal(QcorrError):
    """Marginal eigenbasis is not unique; fixed-basis quantity undefined."""


class NotPure(QcorrError):
    """Operation defined only for pure states."""


class Unsupported(QcorrError):
    """Requested (measure, dimension, route) combination is not available."""
