#!/usr/bin/env python
"""errors.py"""


class OptomechError(Exception):
    """Base class for every error raised by this package."""


class ConfigError(OptomechError):
    """
    Invalid configuration: unknown key, bad value or unsupported schema.

    Args:
        - message (str): Human readable description.
        - key (str): The offending key or parameter, if known.
    """

    def __init__(self, message, key=None):
        super().__init__(message)
        self.key = key


class NumericalError(OptomechError):
    """Base class for failures of a numerical routine."""


class PoleError(NumericalError):
    """Argument sits on a pole of the Gamma function."""


class NearPoleError(NumericalError):
    """Summation parameter too close to an integer."""


class ConvergenceError(NumericalError):
    """A series could not reach the requested tolerance."""


class NoConvergence(NumericalError):
    """An iterative solver exhausted its iteration budget."""


class DegenerateDetuning(NumericalError):
    """Two partial-fraction poles coincide (Δ̃_eff − Δ_eff = ±ω_m)."""


class ParameterMismatch(NumericalError):
    """Parameters violate the precondition of a specialised formula."""
