"""Exception types shared across the package."""


class DunklKitError(Exception):
    """Base class for all package-specific errors."""


class ConfigError(DunklKitError):
    """Invalid configuration, parameters out of range, unknown keys."""


class NumericalError(DunklKitError):
    """Base class for runtime numerical failures."""


class QuadratureError(NumericalError):
    """A quadrature did not converge or its error estimate is unusable."""


class ResolutionError(NumericalError):
    """A grid or node budget cannot resolve the requested computation."""


class PositivityError(NumericalError):
    """A quantity that must be nonnegative came out negative beyond tolerance."""


class ConsistencyError(NumericalError):
    """Two independent evaluation routes disagree beyond tolerance."""
