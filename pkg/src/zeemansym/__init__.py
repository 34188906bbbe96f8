"""so(3) representation machinery for the normal Zeeman effect."""
from .errors import (
    InconsistentCharacterError,
    MalformedInputError,
    MalformedRepresentationError,
    RejectedInputError,
    StepControlError,
    ZeemanSymError,
)
from .so3rep import Basis, Generators, SpinLabel, SpinRep, defining_rep, spherical_rep

__version__ = "0.1.0"

__all__ = [
    "Basis",
    "Generators",
    "InconsistentCharacterError",
    "MalformedInputError",
    "MalformedRepresentationError",
    "RejectedInputError",
    "SpinLabel",
    "SpinRep",
    "StepControlError",
    "ZeemanSymError",
    "defining_rep",
    "spherical_rep",
]
