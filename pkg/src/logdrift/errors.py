"""Exception and warning types shared across the package."""


class LogDriftError(Exception):
    """Base class for all package-specific errors."""


class ConfigError(LogDriftError):
    """A run configuration failed validation."""

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")


class BracketFailure(LogDriftError):
    """Golden-section refinement failed to shrink the bracket below tolerance."""


class DegenerateModel(LogDriftError):
    """Model constants violate the standing assumptions (M = 0 or a vanishing kernel)."""


class GridMismatch(LogDriftError):
    """Two grid functions that must share a grid do not."""


class ImaginaryResidue(LogDriftError):
    """A result required to be real carries an imaginary part above tolerance."""


class ZeroModePresent(LogDriftError):
    """The input carries a zero-frequency component the operator cannot act on."""


class BallViolation(LogDriftError):
    """An iterate lies outside the closed ball the contraction map is defined on."""


class AdmissibilityError(LogDriftError):
    """The kernel scaling exceeds the threshold below which the iteration is guaranteed."""


class MaxItersExceeded(LogDriftError):
    """The fixed-point iteration hit its iteration cap before meeting tolerance."""


class DecayWarning(UserWarning):
    """A sampled function does not decay below tolerance at the domain boundary."""


class NontrivialZeroMode(UserWarning):
    """The source has a nonzero mean; the discrete solve drops that single mode."""
