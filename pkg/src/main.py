#!/usr/bin/env python
"""
optobessel

Entry point of the optobessel command line: exact Bessel-series closed
forms for cavity optomechanics, with sweeps and validation runs written as
CSV or JSON tables.

Usage:
    python main.py MODE [options]
    python main.py --unit-help

Modes:
    force, power, attractor-sweep, stability-scan, drift, diffusion,
    wigner, cycles, delta-eff, asymptote, validate

Options (every mode):
    --config PATH    JSON config (schema 1), flags override it
    --output PATH    Write to a file instead of stdout
    --format FMT     csv (default) or json
    --debug          Enable debug mode

Dependencies:
    - Python 3.10 or above
    - numpy, scipy, mpmath, python-dotenv

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
"""
import sys

from modules import cli
from modules import config
from modules import utils


def main():
    """
    Main function for executing the program.

    Returns:
        - int: The exit code of the command line.
    """
    # Ensure that the config exists
    config.ensure_config()

    return cli.main(sys.argv[1:])


if __name__ == "__main__":
    sys.excepthook = utils.exception_handler

    sys.exit(main())
