"""Exception and warning types shared across the library."""


class SpectralError(Exception):
    """Base class for all library errors."""


class DomainError(SpectralError):
    """An argument lies outside the mathematical domain of the operation."""


class QuadratureError(SpectralError):
    """A quadrature routine failed to meet its internal error target."""


class BranchError(SpectralError):
    """Continuous branch tracking of arg detected an unresolvable jump."""


class ConvergenceError(SpectralError):
    """An adaptive truncation could not reach the requested tolerance."""


class MetadataError(SpectralError):
    """Required tail metadata is missing for the requested estimate."""


class ConditionError(SpectralError):
    """A verifiable precondition on the input measure fails."""


class OverflowGuard(SpectralError):
    """A series evaluation would lose all significant digits; refusing."""


class ResolutionError(SpectralError):
    """The grid is too coarse to resolve the requested object."""


class InterpolationError(SpectralError):
    """A coordinate change maps points too far outside the sampled box."""


class ConfigError(SpectralError):
    """Inconsistent simulation or run configuration."""


class ValidationError(SpectralError):
    """A JSON configuration failed schema validation."""


class DomainWarning(UserWarning):
    """Diagnostic warning: an input is likely outside the discretized
    domain of the operator being applied (spectral tail mass too large)."""
