#!/usr/bin/env python
"""misc.py

Subcommand table of the command line: which parameter set each mode
takes, which options it accepts and the handler that turns a resolved
RunConfig into output rows.
"""
import dataclasses
import logging

from classes.errors import ConfigError
from classes.params import AttractorParams, CycleParams, RunConfig
from modules import attractor
from modules import cycles
from modules import utils
from modules import verify

logger = logging.getLogger(__name__)

ATTRACTOR_FIELDS = tuple(field.name for field in
                         dataclasses.fields(AttractorParams))
CYCLE_FIELDS = tuple(field.name for field in dataclasses.fields(CycleParams))

# Flag spellings shared by both parameter sets, per set
FIELD_ALIASES = {
    "attractor": {"omega_m": "Omega_m"},
    "cycle": {"Omega_m": "omega_m"},
}

ASYMPTOTE_QUANTITIES = {
    "force": "attractor",
    "power": "attractor",
    "power_small": "attractor",
    "drift": "cycle",
    "delta_eff": "cycle",
    "delta_eff_small": "cycle",
}


def param_kind(run: RunConfig):
    """
    Parameter set of a run: "attractor", "cycle" or None.
    """
    kind = SUBCOMMANDS[run.mode]["params"]
    if kind == "by-quantity":
        quantity = run.options.get("quantity", "force")
        if quantity not in ASYMPTOTE_QUANTITIES:
            raise ConfigError(f"unknown asymptote quantity {quantity!r}",
                              "quantity")
        return ASYMPTOTE_QUANTITIES[quantity]
    return kind


def normalize_params(kind, params: dict) -> dict:
    """
    Map parameter names onto the fields of the run's parameter set.

    Args:
        - kind (str): "attractor" or "cycle".
        - params (dict): Names from flags or the JSON config.

    Returns:
        - dict: Keyword arguments for the dataclass.
    """
    if kind is None:
        if params:
            raise ConfigError(f"unknown parameter {sorted(params)[0]!r}: "
                              "this mode takes none", sorted(params)[0])
        return {}

    fields = ATTRACTOR_FIELDS if kind == "attractor" else CYCLE_FIELDS
    aliases = FIELD_ALIASES[kind]
    resolved = {}
    for key, value in params.items():
        name = aliases.get(key, key)
        if name not in fields:
            raise ConfigError(f"unknown parameter {key!r} for {kind} "
                              "parameters", key)
        resolved[name] = value
    return resolved


def build_params(run: RunConfig):
    """
    The AttractorParams or CycleParams of a run, None for modes without a
    parameter set. For cycle runs gamma_over_gamma0 sets γ in units of
    γ0 = g0E²/ω_m².
    """
    kind = param_kind(run)
    if kind is None:
        return None

    try:
        if kind == "attractor":
            return AttractorParams(**run.params)
        p = CycleParams(**run.params)
    except TypeError as error:
        # Non-numeric values from a JSON config
        raise ConfigError(f"bad parameter value: {error}",
                          "params") from error

    ratio = run.options.get("gamma_over_gamma0")
    if ratio is not None:
        p = dataclasses.replace(p, gamma=float(ratio) * p.gamma0)
    return p


def _values(run: RunConfig, name: str, fallback=None) -> list:
    spec = run.axis(name)
    if spec is not None:
        return spec.values()
    if fallback is None:
        raise ConfigError(f"mode {run.mode} needs values for {name!r} "
                          f"(--{name} or --{name}-range)", name)
    return [float(fallback)]


def _cells(run: RunConfig, p: AttractorParams):
    for A in _values(run, "A", p.A):
        for Delta in _values(run, "Delta", p.Delta):
            yield dataclasses.replace(p, A=A, Delta=Delta)


def run_force(run: RunConfig, p: AttractorParams):
    rows = [[cell.A, cell.Delta, cell.r, cell.X, attractor.force_avg(cell)]
            for cell in _cells(run, p)]
    return ["A", "Delta", "r", "X", "force"], rows, True


def run_power(run: RunConfig, p: AttractorParams):
    rows = [[cell.A, cell.Delta, cell.r, cell.X, attractor.power_input(cell)]
            for cell in _cells(run, p)]
    return ["A", "Delta", "r", "X", "power"], rows, True


def run_attractor_sweep(run: RunConfig, p: AttractorParams):
    records = attractor.attractor_sweep(
        _values(run, "A", p.A), _values(run, "Delta", p.Delta), p,
        self_consistent=bool(run.options.get("self_consistent", False)))
    failed = sum(1 for record in records if not record.ok)
    if failed:
        logger.warning("%d of %d sweep cells failed", failed, len(records))
    return (["A", "Delta", "xbar", "ratio", "force", "power", "ok"],
            [record.row() for record in records], True)


def run_stability_scan(run: RunConfig, p: AttractorParams):
    coupling = float(run.options.get("coupling", p.coupling))
    extrema = attractor.stability_extrema_scan(coupling, _values(run, "c"))
    return ["c", "r_max", "f_max"], [list(row) for row in extrema], True


def run_drift(run: RunConfig, p: CycleParams):
    func = cycles.drift_mu_dynamical if run.options.get("dynamical") \
        else cycles.drift_mu
    rows = [[r, func(r, p)] for r in _values(run, "r")]
    return ["r", "mu"], rows, True


def run_diffusion(run: RunConfig, p: CycleParams):
    rows = [[r, cycles.diffusion_D(r, p)] for r in _values(run, "r")]
    return ["r", "D"], rows, True


def run_wigner(run: RunConfig, p: CycleParams):
    if run.options.get("approx"):
        func = cycles.wigner_diffusion_resonant_approx
    elif run.options.get("general"):
        func = cycles.wigner_diffusion_general
    else:
        func = cycles.wigner_diffusion
    rows = [[r, func(r, p)] for r in _values(run, "r")]
    return ["r", "D_W"], rows, True


def run_cycles(run: RunConfig, p: CycleParams):
    found = cycles.find_limit_cycles(
        p, float(run.options.get("r_min", 0.05)),
        float(run.options.get("r_max", 10.0)),
        use_approx=bool(run.options.get("approx", False)))
    return ["r0", "slope", "stable"], [cycle.row() for cycle in found], True


def run_delta_eff(run: RunConfig, p: CycleParams):
    rows = [[r, cycles.solve_delta_eff(r, p)] for r in _values(run, "r")]
    return ["r", "delta_eff"], rows, True


def _asymptote_pair(quantity):
    """(exact, approximate) functions of one asymptote quantity."""
    return {
        "force": (attractor.force_avg, attractor.force_avg_asymptotic),
        "power": (attractor.power_input, attractor.power_input_asymptotic),
        "power_small": (attractor.power_input,
                        attractor.power_input_small_amplitude),
        "drift": (cycles.drift_mu, cycles.drift_mu_asymptotic),
        "delta_eff": (
            lambda r, p: cycles.delta_eff_rhs(p.Delta, r, p),
            cycles.delta_eff_asymptotic),
        "delta_eff_small": (
            lambda r, p: cycles.delta_eff_rhs(p.Delta, r, p),
            lambda r, p: cycles.delta_eff_asymptotic(r, p, small_delta=True)),
    }[quantity]


def run_asymptote(run: RunConfig, p):
    quantity = run.options.get("quantity", "force")
    exact, approx = _asymptote_pair(quantity)
    rows = []

    if ASYMPTOTE_QUANTITIES[quantity] == "attractor":
        for A in _values(run, "A", p.A):
            cell = dataclasses.replace(p, A=A)
            value, estimate = exact(cell), approx(cell)
            rows.append([A, value, estimate, utils.rel_err(estimate, value)])
    else:
        for r in _values(run, "r"):
            value, estimate = exact(r, p), approx(r, p)
            rows.append([r, value, estimate, utils.rel_err(estimate, value)])

    return ["at", "exact", "asymptotic", "rel_err"], rows, True


def run_validate(run: RunConfig, p):
    reports = verify.run_validation_suite(run.options.get("suite",
                                                          "standard"))
    ok = all(report.passed for report in reports)
    for report in reports:
        if not report.passed:
            logger.warning("%s %s: rel_err %.3e above %.1e", report.quantity,
                           report.point_id, report.rel_err, report.tolerance)
    columns = ["quantity", "point_id", "closed", "oracle", "rel_err",
               "n_terms", "closed_im", "oracle_im"]
    return columns, [report.row() for report in reports], ok


# Parameter set, accepted options (name -> type) and handler per mode
SUBCOMMANDS = {
    "force": {"params": "attractor", "options": {},
              "handler": run_force},
    "power": {"params": "attractor", "options": {},
              "handler": run_power},
    "attractor-sweep": {"params": "attractor",
                        "options": {"self_consistent": bool},
                        "handler": run_attractor_sweep},
    "stability-scan": {"params": "attractor",
                       "options": {"coupling": float},
                       "handler": run_stability_scan},
    "drift": {"params": "cycle",
              "options": {"gamma_over_gamma0": float, "dynamical": bool},
              "handler": run_drift},
    "diffusion": {"params": "cycle",
                  "options": {"gamma_over_gamma0": float},
                  "handler": run_diffusion},
    "wigner": {"params": "cycle",
               "options": {"gamma_over_gamma0": float, "approx": bool,
                           "general": bool},
               "handler": run_wigner},
    "cycles": {"params": "cycle",
               "options": {"gamma_over_gamma0": float, "r_min": float,
                           "r_max": float, "approx": bool},
               "handler": run_cycles},
    "delta-eff": {"params": "cycle",
                  "options": {"gamma_over_gamma0": float},
                  "handler": run_delta_eff},
    "asymptote": {"params": "by-quantity",
                  "options": {"quantity": str, "gamma_over_gamma0": float},
                  "handler": run_asymptote},
    "validate": {"params": None, "options": {"suite": str},
                 "handler": run_validate},
}


def check_options(mode: str, options: dict) -> dict:
    """
    Reject options the mode does not know and coerce the rest to their
    declared types.
    """
    accepted = SUBCOMMANDS[mode]["options"]
    checked = {}
    for key, value in options.items():
        if key not in accepted:
            raise ConfigError(f"unknown option {key!r} for {mode}", key)
        kind = accepted[key]
        if kind is bool and not isinstance(value, bool):
            raise ConfigError(f"option {key!r} must be true or false", key)
        try:
            checked[key] = kind(value)
        except (TypeError, ValueError) as error:
            raise ConfigError(f"option {key!r}: {error}", key) from error
    return checked


def dispatch(run: RunConfig):
    """
    Run the handler of run.mode.

    Args:
        - run (RunConfig): Resolved invocation.

    Returns:
        - tuple: (columns, rows, ok); ok is False when a validation point
            missed its tolerance.
    """
    if run.mode not in SUBCOMMANDS:
        raise ConfigError(f"unknown mode {run.mode!r}", "mode")
    p = build_params(run)
    logger.debug("dispatching %s with %r", run.mode, p)
    return SUBCOMMANDS[run.mode]["handler"](run, p)
