"""Exception types raised by the library."""


class GaussmemError(Exception):
    """Base class for all library errors."""


class DomainError(GaussmemError, ValueError):
    """An argument is outside the mathematical domain of an operation."""


class NonPhysicalCovarianceError(GaussmemError):
    """A covariance matrix fails the physicality requirements of a quantum state."""


class InfeasibleParametersError(GaussmemError):
    """Parameters violate a positivity constraint of the channel model."""


class InfeasibleMemoryError(InfeasibleParametersError):
    """Memory degree too large: the diagonal compensation of the noise covariance turns negative."""


class InfeasibleCorrelationError(InfeasibleParametersError):
    """Correlation coefficient too large for the remaining photon budget."""


class InfeasibleSqueezingError(InfeasibleParametersError):
    """Squeezing consumes more photons per mode than the input budget allows."""


class EmptyFeasibleRegionError(GaussmemError):
    """No feasible operating point exists for the requested channel parameters."""
