"""Numeric iterated integrals along polygonal loops in an arrangement complement."""

from .core import (
    DEFAULT_BASE,
    Loop,
    LoopError,
    TwistedForm,
    iterated_integral,
    load_loop,
    monodromy,
    numeric_weights,
    omega_integrals,
    omega_integrals_exact,
    standard_meridian,
)
from .kernels import backend

__all__ = [
    "DEFAULT_BASE",
    "Loop",
    "LoopError",
    "TwistedForm",
    "backend",
    "iterated_integral",
    "load_loop",
    "monodromy",
    "numeric_weights",
    "omega_integrals",
    "omega_integrals_exact",
    "standard_meridian",
]
