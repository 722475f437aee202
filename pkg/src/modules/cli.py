#!/usr/bin/env python
"""cli.py

Command-line front end. Every subcommand reads its parameters from flags
and/or a JSON --config file, runs one library operation and writes a
table (CSV by default) with a comment header holding the resolved config.

Exit codes: 0 success, 2 configuration error, 3 numerical failure or a
validation point outside its tolerance.
"""
import argparse
import json
import logging
import sys

from classes.errors import ConfigError, NumericalError
from classes.params import AxisSpec, RunConfig
from modules import config
from modules import files
from modules import misc
from modules import utils

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

CONFIG_KEYS = ("schema", "mode", "params", "grid", "output", "format",
               "tolerances", "options")
AXIS_KEYS = ("name", "start", "stop", "count", "spacing")

# JSON tolerance names -> INI section and key
TOLERANCE_KEYS = {
    "series_tol": ("VALIDATION", "SERIES TOL"),
    "ode_tol": ("VALIDATION", "ODE TOL"),
    "oracle_tol": ("ORACLE", "TOL"),
    "root_tol": ("SOLVER", "ROOT TOL"),
    "residual": ("SOLVER", "RESIDUAL"),
    "max_iterations": ("SOLVER", "MAX ITERATIONS"),
}

ATTRACTOR_FLAGS = (
    ("--kappa", "kappa", "cavity decay rate κ"),
    ("--delta", "Delta", "laser detuning Δ"),
    ("--G", "G", "frequency pull per unit displacement"),
    ("--omega-m", "omega_m", "mechanical frequency"),
    ("--alpha-max-sq", "alpha_max_sq", "resonant photon number |α_max|²"),
    ("--gamma-m", "Gamma_M", "mechanical damping Γ_M"),
    ("--xbar", "xbar", "mean displacement"),
    ("--A", "A", "oscillation amplitude"),
    ("--mass", "mass", "stiffness scale of the force balance"),
)

CYCLE_FLAGS = (
    ("--kappa", "kappa", "cavity decay rate κ"),
    ("--delta", "Delta", "bare detuning Δ"),
    ("--omega-m", "omega_m", "mechanical frequency"),
    ("--delta-eff", "Delta_eff", "effective detuning Δ_eff"),
    ("--delta-tilde-eff", "Delta_tilde_eff",
     "fluctuation detuning Δ̃_eff"),
    ("--g0", "g0", "single-photon coupling g0"),
    ("--E", "E", "drive strength E"),
    ("--gamma", "gamma", "intrinsic mechanical damping γ"),
    ("--nbar", "nbar", "thermal occupation n̄"),
    ("--K", "K", "Kerr coefficient K"),
)

PARAM_DESTS = tuple(sorted({dest for _, dest, _ in
                            ATTRACTOR_FLAGS + CYCLE_FLAGS}))

UNIT_HELP = """\
All inputs are in normalized units.

force, power, attractor-sweep, stability-scan:
    frequencies and rates (kappa, delta, gamma-m) in units of the
    mechanical frequency Ω_m (set --omega-m 1); G·A/Ω_m is the
    dimensionless Bessel argument X; c = κ/2Ω_m and r = (G x̄ + Δ)/Ω_m.
drift, diffusion, wigner, cycles, delta-eff:
    frequencies and rates (kappa, delta, delta-eff, gamma, g0) in units
    of ω_m; the amplitude r is dimensionless and Bessel functions take
    ηr with η = 2 g0/ω_m. --gamma-over-gamma0 gives γ in units of
    γ0 = g0 E²/ω_m².
ħ = 1 throughout; the force is G|α|² and the power ⟨|α|² ẋ⟩.
"""


def _param_flags(parser, flags):
    group = parser.add_argument_group("parameters")
    for flag, dest, text in flags:
        group.add_argument(flag, dest=dest, type=float,
                           default=argparse.SUPPRESS, help=text)


def _range_flag(parser, name, label):
    parser.add_argument(f"--{name}-range", dest=f"axis_{label}", nargs=3,
                        metavar=("START", "STOP", "COUNT"),
                        default=argparse.SUPPRESS,
                        help=f"sweep {label} over COUNT points")


def _option_flag(parser, flag, dest, kind, text):
    if kind is bool:
        parser.add_argument(flag, dest=dest, action="store_true",
                            default=argparse.SUPPRESS, help=text)
    else:
        parser.add_argument(flag, dest=dest, type=kind,
                            default=argparse.SUPPRESS, help=text)


def _common_parent():
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--config", help="JSON config file (schema 1)")
    parent.add_argument("--output", default=argparse.SUPPRESS,
                        help="output file, stdout when omitted")
    parent.add_argument("--format", dest="fmt", choices=("csv", "json"),
                        default=argparse.SUPPRESS, help="output format")
    parent.add_argument("--spacing", choices=("linear", "log"),
                        default="linear", help="spacing of --*-range axes")
    parent.add_argument("--debug", action="store_true",
                        help="Enable debug mode")
    return parent


def build_parser() -> argparse.ArgumentParser:
    """
    Create the argument parser with one subparser per mode.

    Returns:
        - argparse.ArgumentParser: The parser.
    """
    parser = argparse.ArgumentParser(
        prog="optobessel",
        description="Closed-form Bessel-series numerics for optomechanics")
    parser.add_argument("-v", "--version", action="version",
                        version=f"optobessel v{utils.app_version()}")
    parser.add_argument("--unit-help", action="store_true",
                        help="print the unit conventions and exit")
    subparsers = parser.add_subparsers(dest="mode", metavar="MODE")
    parent = _common_parent()

    for mode in ("force", "power", "attractor-sweep", "stability-scan"):
        sub = subparsers.add_parser(mode, parents=[parent])
        _param_flags(sub, ATTRACTOR_FLAGS)
        _range_flag(sub, "A", "A")
        _range_flag(sub, "delta", "Delta")
        if mode == "attractor-sweep":
            _option_flag(sub, "--self-consistent", "self_consistent", bool,
                         "solve the force balance for x̄ in every cell")
        if mode == "stability-scan":
            _range_flag(sub, "c", "c")
            _option_flag(sub, "--coupling", "coupling", float,
                         "G|α_max|²/Ω_m, derived from the parameters "
                         "when omitted")

    for mode in ("drift", "diffusion", "wigner", "cycles", "delta-eff"):
        sub = subparsers.add_parser(mode, parents=[parent])
        _param_flags(sub, CYCLE_FLAGS)
        _option_flag(sub, "--gamma-over-gamma0", "gamma_over_gamma0", float,
                     "γ in units of g0E²/ω_m²")
        if mode == "cycles":
            _option_flag(sub, "--r-min", "r_min", float,
                         "lower end of the scan (default 0.05)")
            _option_flag(sub, "--r-max", "r_max", float,
                         "upper end of the scan (default 10)")
            _option_flag(sub, "--approx", "approx", bool,
                         "use the near-resonance damping")
            continue
        sub.add_argument("--r", dest="axis_r_value", type=float,
                         default=argparse.SUPPRESS, help="amplitude r")
        _range_flag(sub, "r", "r")
        if mode == "drift":
            _option_flag(sub, "--dynamical", "dynamical", bool,
                         "solve Δ_eff(r) before evaluating the drift")
        if mode == "wigner":
            _option_flag(sub, "--approx", "approx", bool,
                         "n = 0 near-resonance form")
            _option_flag(sub, "--general", "general", bool,
                         "form valid for Δ̃_eff ≠ Δ_eff")

    sub = subparsers.add_parser("asymptote", parents=[parent])
    seen = set()
    flags = []
    for flag in ATTRACTOR_FLAGS + CYCLE_FLAGS:
        if flag[0] not in seen:
            seen.add(flag[0])
            flags.append(flag)
    _param_flags(sub, flags)
    _option_flag(sub, "--quantity", "quantity", str,
                 "one of " + ", ".join(misc.ASYMPTOTE_QUANTITIES))
    _option_flag(sub, "--gamma-over-gamma0", "gamma_over_gamma0", float,
                 "γ in units of g0E²/ω_m²")
    _range_flag(sub, "A", "A")
    sub.add_argument("--r", dest="axis_r_value", type=float,
                     default=argparse.SUPPRESS, help="amplitude r")
    _range_flag(sub, "r", "r")

    sub = subparsers.add_parser("validate", parents=[parent])
    _option_flag(sub, "--suite", "suite", str,
                 "shipped grid name or JSON path (default standard)")

    return parser


def load_config_file(path) -> dict:
    """
    Read and check a JSON config file.

    Args:
        - path (str): File path.

    Returns:
        - dict: The parsed document.
    """
    try:
        with open(path, "r", encoding="utf-8") as handle:
            document = json.load(handle)
    except OSError as error:
        raise ConfigError(f"cannot read config {path}: {error}",
                          "config") from error
    except json.JSONDecodeError as error:
        raise ConfigError(f"config {path} is not valid JSON: {error}",
                          "config") from error

    if not isinstance(document, dict):
        raise ConfigError("config must be a JSON object", "config")
    for key in document:
        if key not in CONFIG_KEYS:
            raise ConfigError(f"unknown config key {key!r}", key)
    if document.get("schema") != 1:
        raise ConfigError(f"unsupported config schema "
                          f"{document.get('schema')!r}", "schema")
    return document


def _axis(name, start, stop, count, spacing="linear") -> AxisSpec:
    try:
        return AxisSpec(name, float(start), float(stop), int(count), spacing)
    except (TypeError, ValueError) as error:
        raise ConfigError(f"axis {name}: {error}", name) from error


def _file_axes(entries) -> dict:
    axes = {}
    if not isinstance(entries, list):
        raise ConfigError("grid must be a list of axes", "grid")
    for entry in entries:
        for key in entry:
            if key not in AXIS_KEYS:
                raise ConfigError(f"unknown axis key {key!r}", key)
        if "name" not in entry:
            raise ConfigError("axis without a name", "grid")
        axes[entry["name"]] = _axis(
            entry["name"], entry.get("start"), entry.get("stop", entry.get(
                "start")), entry.get("count", 1),
            entry.get("spacing", "linear"))
    return axes


def _flag_axes(args) -> dict:
    axes = {}
    values = vars(args)
    for key, value in values.items():
        if key == "axis_r_value":
            axes["r"] = _axis("r", value, value, 1)
        elif key.startswith("axis_"):
            name = key[len("axis_"):]
            axes[name] = _axis(name, *value, args.spacing)
    return axes


def resolve_run(args, document: dict) -> RunConfig:
    """
    Merge the JSON config and the flags into one RunConfig; flags win.

    Args:
        - args (argparse.Namespace): Parsed flags.
        - document (dict): Parsed --config file, empty when absent.

    Returns:
        - RunConfig: The resolved invocation.
    """
    mode = args.mode
    if document.get("mode", mode) != mode:
        raise ConfigError(f"config is for mode {document['mode']!r}, not "
                          f"{mode!r}", "mode")

    # Options: file first, then flags
    options = dict(document.get("options", {}))
    for key in misc.SUBCOMMANDS[mode]["options"]:
        if hasattr(args, key):
            options[key] = getattr(args, key)
    options = misc.check_options(mode, options)

    run = RunConfig(mode=mode, options=options)
    kind = misc.param_kind(run)

    params = dict(document.get("params", {}))
    params.update({dest: getattr(args, dest) for dest in PARAM_DESTS
                   if hasattr(args, dest)})
    run.params = misc.normalize_params(kind, params)

    axes = _file_axes(document.get("grid", []))
    axes.update(_flag_axes(args))
    run.grid = [axes[name] for name in sorted(axes)]

    run.output = getattr(args, "output", document.get("output"))
    run.fmt = getattr(args, "fmt", document.get("format", "csv"))
    if run.fmt not in ("csv", "json"):
        raise ConfigError(f"unknown format {run.fmt!r}", "format")

    tolerances = document.get("tolerances", {})
    for key in tolerances:
        if key not in TOLERANCE_KEYS:
            raise ConfigError(f"unknown tolerance {key!r}", key)
    run.tolerances = dict(tolerances)
    return run


def configure_logging(debug: bool) -> None:
    """Root logger on stderr: DEBUG with --debug, WARNING otherwise."""
    logging.basicConfig(
        level=logging.DEBUG if debug else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


def _fail(code: int, error) -> int:
    key = getattr(error, "key", None)
    suffix = f" [{key}]" if key else ""
    sys.stderr.write(f"optobessel: error: {error}{suffix}\n")
    return code


def main(argv=None) -> int:
    """
    Parse argv, run the subcommand and write its table.

    Args:
        - argv (list): Arguments without the program name; sys.argv[1:]
            when None.

    Returns:
        - int: Exit code.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_request:
        # argparse exits 2 on bad flags and 0 on --help / --version
        return int(exit_request.code or 0)

    if args.unit_help:
        sys.stdout.write(UNIT_HELP)
        return EXIT_OK
    if args.mode is None:
        parser.print_usage(sys.stderr)
        return EXIT_CONFIG

    configure_logging(args.debug)

    try:
        document = load_config_file(args.config) if args.config else {}
        run = resolve_run(args, document)
        config.set_overrides({TOLERANCE_KEYS[key]: value
                              for key, value in run.tolerances.items()})
        columns, rows, ok = misc.dispatch(run)
        files.save_table(columns, rows, run, utils.app_version())
    except (ConfigError, KeyError) as error:
        return _fail(EXIT_CONFIG, error)
    except (NumericalError, OverflowError, ZeroDivisionError) as error:
        return _fail(EXIT_NUMERICAL, error)
    except ValueError as error:
        # Domain checks of the library (r < 0, empty scan interval, ...)
        return _fail(EXIT_CONFIG, error)
    finally:
        config.clear_overrides()

    if not ok:
        logger.warning("some points are outside their tolerance")
        return EXIT_NUMERICAL
    return EXIT_OK
