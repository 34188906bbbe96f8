"""Exception hierarchy shared by the library and the CLI."""


class ZeemanSymError(Exception):
    """Base class for every domain error raised by this package."""


class RejectedInputError(ZeemanSymError, ValueError):
    """An argument violates an operation's precondition."""


class StepControlError(RejectedInputError):
    """Integrator step is too coarse for the requested rate."""


class MalformedRepresentationError(ZeemanSymError):
    """Generators do not form a valid finite-dimensional so(3) representation."""


class InconsistentCharacterError(ZeemanSymError):
    """A sampled character does not decompose into non-negative integer multiplicities."""


class MalformedInputError(ZeemanSymError):
    """A serialized document could not be parsed or failed validation on load."""
