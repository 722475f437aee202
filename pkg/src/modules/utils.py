#!/usr/bin/env python
"""utils.py"""
import cmath
import math
import os
import sys
import traceback

from dotenv import load_dotenv

from classes.errors import NumericalError

# .env sits at the repository root, next to requirements.txt
ENV_FILE = os.path.join(os.path.dirname(os.path.dirname(os.path.dirname(
    os.path.abspath(__file__)))), ".env")
load_dotenv(dotenv_path=ENV_FILE)


def ensure_finite(value, name="value"):
    """
    Check that a real or complex result carries no NaN/Inf.

    Args:
        - value: The float or complex to check.
        - name (str): Used in the error message.

    Returns:
        - The value, unchanged.
    """
    if isinstance(value, complex):
        ok = cmath.isfinite(value)
    else:
        ok = math.isfinite(value)

    if not ok:
        raise NumericalError(f"{name} is not finite: {value!r}")

    return value


def rel_err(value, reference, floor=1e-300):
    """|value − reference| / max(|reference|, floor)."""
    return abs(value - reference) / max(abs(reference), floor)


def format_value(value) -> str:
    """
    Shortest round-trip text for a CSV cell.

    Floats use repr (shortest representation that parses back to the
    same double), booleans become true/false.
    """
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if value == 0.0:
            # Fold -0.0 so identical runs cannot differ in sign of zero
            return "0.0"
        return repr(value)
    if isinstance(value, int):
        return str(value)
    return str(value)


def exception_handler(exception_type, exception_value, exception_traceback):
    """
    Uncaught-exception hook: dump the traceback to stderr with a short
    banner instead of letting the interpreter print it bare.
    """
    error = traceback.format_exception(
        exception_type, exception_value, exception_traceback)
    sys.stderr.write("Uncaught exception:\n")
    sys.stderr.write("".join(error))


def app_version() -> str:
    """Version string from .env, written into every output header."""
    return os.getenv("VERSION", "dev")
