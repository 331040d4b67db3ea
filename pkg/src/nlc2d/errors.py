"""Exception types shared across the package."""


class Nlc2dError(Exception):
    """Base class for all package errors."""


class ConfigError(Nlc2dError):
    """Invalid configuration: bad key, missing key, or violated invariant."""


class ResolutionError(Nlc2dError):
    """A requested length scale is too small for the grid."""


class PositivityError(Nlc2dError):
    """Temperature lost its positive lower bound."""


class BlowUpError(Nlc2dError):
    """NaN/Inf appeared during time stepping.

    Carries the last state that was still finite.
    """

    def __init__(self, message, last_good_state=None):
        super().__init__(message)
        self.last_good_state = last_good_state


class DegenerateDirectorError(Nlc2dError):
    """The director magnitude dropped too low for renormalization."""


class ConcentrationAtGridScaleError(Nlc2dError):
    """Energy is concentrated below the smallest resolvable ball radius."""


class InconclusiveSegmentError(Nlc2dError):
    """A concentration event could not be bracketed by a resolvable window."""


class CheckpointError(Nlc2dError):
    """Malformed, truncated, or version-incompatible checkpoint file."""
