#!/usr/bin/env python
"""verify.py

Independent checks of the closed forms: the defining series summed term by
term with a certified tail, and a direct time integration of the cavity
field.
"""
import dataclasses
import json
import logging
import math
import os

import numpy as np

from classes.errors import ConfigError, NumericalError
from classes.params import AttractorParams, CycleParams, TrajectoryConfig
from classes.records import OracleReport, SumKind, SumResult
from modules import attractor
from modules import besselsum
from modules import config
from modules import cycles
from modules import utils

logger = logging.getLogger(__name__)

GRID_DIR = os.path.join(os.path.dirname(os.path.dirname(
    os.path.abspath(__file__))), "grids")

ATTRACTOR_QUANTITIES = ("photon_number", "force", "power")
CYCLE_QUANTITIES = ("drift", "diffusion", "wigner", "wigner_general",
                    "delta_eff_rhs")


def _scaled(result: SumResult, factor: float, offset: float = 0.0):
    return SumResult(offset + factor * result.value, result.terms_used,
                     abs(factor) * result.err_estimate)


def _photon_series(p: AttractorParams, tol: float) -> SumResult:
    c, r = p.c, p.r
    amplitude = p.alpha_max_sq * c * c

    def terms(orders, jtable):
        return amplitude * jtable(0) ** 2 / (c * c + (orders - r) ** 2)

    poles = [complex(-r, -c), complex(-r, c)]
    result = besselsum.direct_sum(terms, p.X, tol, (0, 0), poles, amplitude)
    return SumResult(result.value.real, result.terms_used,
                     result.err_estimate)


def _power_series(p: AttractorParams, tol: float) -> SumResult:
    if p.A == 0.0:
        return SumResult(0.0)
    c, r = p.c, p.r
    scale = p.A * p.Omega_m
    amplitude = p.alpha_max_sq * c * c

    def terms(orders, jtable):
        # conj(α_n) α_{n+1}
        left = c - 1j * (orders - r)
        right = c + 1j * (orders + 1 - r)
        return amplitude * jtable(0) * jtable(1) / (left * right)

    poles = [complex(-r, c), complex(1.0 - r, -c)]
    result = besselsum.direct_sum(terms, p.X, tol / scale, (0, 1), poles,
                                  amplitude)
    return SumResult(scale * result.value.imag, result.terms_used,
                     scale * result.err_estimate)


def _h(orders, p: CycleParams, detuning: float):
    return p.kappa + 1j * (orders * p.omega_m - detuning)


def _drift_series(r: float, p: CycleParams, tol: float) -> SumResult:
    x = p.eta * r
    strength = p.g0 * p.E ** 2
    weight = strength / p.omega_m ** 2

    def terms(orders, jtable):
        h_prev = _h(orders - 1, p, p.Delta_eff)
        h_conj = np.conj(_h(orders, p, p.Delta_eff))
        return strength * jtable(-1) * jtable(0) / (h_prev * h_conj)

    nu = p.nu
    result = besselsum.direct_sum(terms, x, tol, (-1, 0),
                                  [-1.0 - nu, -nu.conjugate()], weight)
    return SumResult(-p.gamma * r + result.value.imag, result.terms_used,
                     result.err_estimate)


def _diffusion_series(r: float, p: CycleParams, tol: float) -> SumResult:
    x = p.eta * r
    omega = p.omega_m
    strength = p.g0 ** 2 * p.E ** 2 / 2.0
    nu, nu_tilde = p.nu, p.nu_tilde

    def lorentz_terms(orders, jtable):
        h = _h(orders, p, p.Delta_eff)
        h_tilde = _h(orders - 1, p, p.Delta_tilde_eff)
        return (strength * p.kappa * jtable(0) ** 2
                / (np.abs(h) ** 2 * np.abs(h_tilde) ** 2))

    def cross_terms(orders, jtable):
        h = _h(orders, p, p.Delta_eff)
        h_tilde = _h(orders - 1, p, p.Delta_tilde_eff)
        h_conj = np.conj(_h(orders - 2, p, p.Delta_eff))
        return strength * jtable(-2) * jtable(0) / (h_tilde * h_conj * h)

    lorentz = besselsum.direct_sum(
        lorentz_terms, x, tol / 2.0, (0, 0),
        [-nu, -nu.conjugate(), -1.0 - nu_tilde, -1.0 - nu_tilde.conjugate()],
        strength * p.kappa / omega ** 4)
    cross = besselsum.direct_sum(
        cross_terms, x, tol / 2.0, (-2, 0),
        [-1.0 - nu_tilde, -2.0 - nu.conjugate(), -nu],
        strength / omega ** 3)

    thermal = p.gamma * (p.nbar + 1.0) / 2.0
    value = thermal + lorentz.value.real - cross.value.real
    return SumResult(value, max(lorentz.terms_used, cross.terms_used),
                     lorentz.err_estimate + cross.err_estimate)


def _wigner_series(r: float, p: CycleParams, tol: float) -> SumResult:
    x = p.eta * r
    strength = p.g0 ** 2 * p.E ** 2 / 4.0
    nu, nu_tilde = p.nu, p.nu_tilde

    def terms(orders, jtable):
        h_tilde = _h(orders + 1, p, p.Delta_tilde_eff)
        upper = jtable(2) / _h(orders + 2, p, p.Delta_eff)
        lower = jtable(0) / _h(orders, p, p.Delta_eff)
        return (strength * p.kappa * np.abs(upper - lower) ** 2
                / np.abs(h_tilde) ** 2)

    # |a − b|² ≤ 4 max(|a|, |b|)², all four factors bounded by one floor
    poles = [1.0 - nu_tilde, 1.0 - nu_tilde.conjugate(), 2.0 - nu, -nu]
    result = besselsum.direct_sum(terms, x, tol, (2, 2), poles,
                                  4.0 * strength * p.kappa / p.omega_m ** 4,
                                  order=4)
    thermal = p.gamma * (2.0 * p.nbar + 1.0) / 4.0
    return SumResult(thermal + result.value.real, result.terms_used,
                     result.err_estimate)


def _delta_eff_series(r: float, p: CycleParams, tol: float) -> SumResult:
    x = p.eta * r
    strength = 2.0 * p.K * p.E ** 2

    def terms(orders, jtable):
        return strength * jtable(0) ** 2 / np.abs(
            _h(orders, p, p.Delta_eff)) ** 2

    nu = p.nu
    result = besselsum.direct_sum(terms, x, tol, (0, 0),
                                  [-nu, -nu.conjugate()],
                                  abs(strength) / p.omega_m ** 2)
    return SumResult(p.Delta + result.value.real, result.terms_used,
                     result.err_estimate)


def direct_series(quantity: str, params, r_or_A: float,
                  tol: float = 1e-13) -> SumResult:
    """
    A physical quantity from its defining series, truncated with a
    certified tail.

    Args:
        - quantity (str): photon_number, force or power (params are
            AttractorParams and r_or_A is A), or drift, diffusion, wigner,
            wigner_general or delta_eff_rhs (params are CycleParams and
            r_or_A is r).
        - params: The parameter set.
        - r_or_A (float): Amplitude.
        - tol (float): Absolute tolerance of the truncation.

    Returns:
        - SumResult: Real value, N and the bound.
    """
    if quantity in ATTRACTOR_QUANTITIES:
        p = dataclasses.replace(params, A=r_or_A)
        if quantity == "power":
            return _power_series(p, tol)
        photons = _photon_series(p, tol / max(1.0, abs(p.G)))
        if quantity == "force":
            return _scaled(photons, p.G)
        return photons

    if quantity in CYCLE_QUANTITIES:
        if r_or_A < 0.0:
            raise ValueError("r must be nonnegative")
        series = {
            "drift": _drift_series,
            "diffusion": _diffusion_series,
            "wigner": _wigner_series,
            "wigner_general": _wigner_series,
            "delta_eff_rhs": _delta_eff_series,
        }[quantity]
        return series(r_or_A, params, tol)

    raise ValueError(f"unknown quantity {quantity!r}")


def closed_form(quantity: str, params, r_or_A: float) -> float:
    """The closed-form counterpart of direct_series."""
    if quantity in ATTRACTOR_QUANTITIES:
        p = dataclasses.replace(params, A=r_or_A)
        return {
            "photon_number": attractor.photon_number,
            "force": attractor.force_avg,
            "power": attractor.power_input,
        }[quantity](p)

    if quantity == "drift":
        return cycles.drift_mu(r_or_A, params)
    if quantity == "diffusion":
        return cycles.diffusion_D(r_or_A, params)
    if quantity == "wigner":
        return cycles.wigner_diffusion(r_or_A, params)
    if quantity == "wigner_general":
        return cycles.wigner_diffusion_general(r_or_A, params)
    if quantity == "delta_eff_rhs":
        return cycles.delta_eff_rhs(params.Delta_eff, r_or_A, params)

    raise ValueError(f"unknown quantity {quantity!r}")


def trajectory_config(p: AttractorParams) -> TrajectoryConfig:
    """Integration settings for p with the step and averaging counts from
    the TRAJECTORY section of the config file."""
    return TrajectoryConfig.for_params(
        p,
        steps_per_period=config.config_int("TRAJECTORY", "STEPS PER PERIOD"),
        periods_average=config.config_int("TRAJECTORY", "PERIODS AVERAGE"),
    )


def _rk4_step(rhs, t, y, dt):
    k1 = rhs(t, y)
    k2 = rhs(t + dt / 2.0, y + dt / 2.0 * k1)
    k3 = rhs(t + dt / 2.0, y + dt / 2.0 * k2)
    k4 = rhs(t + dt, y + dt * k3)
    return y + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _steady_samples(p: AttractorParams, cfg: TrajectoryConfig):
    """
    Integrate α̇ = −(κ/2)(α − α_max) + i(Δ + G x(t)) α from α(0) = α_max
    and return (t, α) on the averaging window, periods_average whole
    periods sampled at steps_per_period points each.
    """
    omega = p.Omega_m
    half_kappa = p.kappa / 2.0
    alpha_max = p.alpha_max

    def rhs(t, alpha):
        detuning = p.Delta + p.G * (p.xbar + p.A * math.cos(omega * t))
        return -half_kappa * (alpha - alpha_max) + 1j * detuning * alpha

    dt = 2.0 * math.pi / omega / cfg.steps_per_period
    alpha = complex(alpha_max)
    step = 0
    for _ in range(cfg.periods_transient * cfg.steps_per_period):
        alpha = _rk4_step(rhs, step * dt, alpha, dt)
        step += 1

    count = cfg.periods_average * cfg.steps_per_period
    times = np.empty(count)
    samples = np.empty(count, dtype=complex)
    for k in range(count):
        times[k] = step * dt
        samples[k] = alpha
        alpha = _rk4_step(rhs, step * dt, alpha, dt)
        step += 1

    logger.debug("cavity integration: %d steps of %.3e", step, dt)
    return times, samples


def integrate_cavity(p: AttractorParams, cfg: TrajectoryConfig = None):
    """
    Time averages of |α|² and |α|²ẋ from a fixed-step RK4 integration.

    Args:
        - p (AttractorParams): The parameter set.
        - cfg (TrajectoryConfig): Step and period counts; the default for p
            when None.

    Returns:
        - tuple: (photon_number_avg, power_avg).
    """
    if cfg is None:
        cfg = trajectory_config(p)
    times, samples = _steady_samples(p, cfg)
    intensity = np.abs(samples) ** 2
    velocity = -p.A * p.Omega_m * np.sin(p.Omega_m * times)
    return float(np.mean(intensity)), float(np.mean(intensity * velocity))


def fourier_coefficients(p: AttractorParams, cfg: TrajectoryConfig = None,
                         n_max: int = 5) -> dict:
    """
    Project the integrated steady state α(t) e^{−iφ(t)},
    φ(t) = (GA/Ω_m) sin(Ω_m t), onto e^{inΩ_m t} for |n| ≤ n_max.

    Returns:
        - dict: n -> complex coefficient, comparable to attractor.alpha_n.
    """
    if cfg is None:
        cfg = trajectory_config(p)
    times, samples = _steady_samples(p, cfg)
    phase = (p.G * p.A / p.Omega_m) * np.sin(p.Omega_m * times)
    envelope = samples * np.exp(-1j * phase)
    return {
        n: complex(np.mean(envelope * np.exp(-1j * n * p.Omega_m * times)))
        for n in range(-n_max, n_max + 1)
    }


def load_grid(grid_spec) -> dict:
    """
    Resolve a grid: a dict is used as is, a shipped grid is looked up by
    name in src/grids/, anything else is read as a JSON path.
    """
    if isinstance(grid_spec, dict):
        grid = grid_spec
    else:
        path = os.path.join(GRID_DIR, f"{grid_spec}.json")
        if not os.path.exists(path):
            path = grid_spec
        try:
            with open(path, "r", encoding="utf-8") as handle:
                grid = json.load(handle)
        except (OSError, json.JSONDecodeError) as error:
            raise ConfigError(f"cannot read grid {grid_spec!r}: {error}",
                              "suite") from error

    if grid and grid.get("schema", 1) != 1:
        raise ConfigError(f"unsupported grid schema {grid.get('schema')}",
                          "schema")
    return grid


def _build_params(quantity: str, values: dict):
    cls = AttractorParams if quantity in ATTRACTOR_QUANTITIES or \
        quantity.startswith("cavity") else CycleParams
    try:
        return cls(**values)
    except TypeError as error:
        raise ConfigError(f"bad parameters for {quantity}: {error}",
                          quantity) from error


def _report(quantity, point_id, closed, oracle, steps, tolerance):
    return OracleReport(quantity, point_id, float(closed), float(oracle),
                        float(utils.rel_err(closed, oracle)), int(steps),
                        tolerance)


def _failed(quantity, point_id, tolerance, error):
    logger.warning("validation point %s (%s) failed: %s", point_id, quantity,
                   error)
    return OracleReport(quantity, point_id, math.nan, math.nan, math.inf, 0,
                        tolerance, math.nan, math.nan)


def run_validation_suite(grid_spec) -> list:
    """
    Every closed form of a grid against its oracle.

    Kernel rows use oracle_sum, series rows direct_series and ode rows
    integrate_cavity. A failing point is reported with rel_err = inf
    rather than stopping the run.

    Args:
        - grid_spec: Grid name, JSON path or dict.

    Returns:
        - list: OracleReport per point, in grid order.
    """
    grid = load_grid(grid_spec)
    series_tol = config.config_float("VALIDATION", "SERIES TOL")
    ode_tol = config.config_float("VALIDATION", "ODE TOL")
    oracle_tol = config.config_float("ORACLE", "TOL")
    reports = []

    for entry in grid.get("kernels", []):
        kind = SumKind[entry["kind"]]
        mu = complex(*entry["mu"])
        tolerance = entry.get("tol", series_tol)
        try:
            closed = besselsum.kernel(kind.shift, mu, entry["x"])
            oracle = besselsum.oracle_sum(kind, mu, entry["x"], oracle_tol)
            reports.append(OracleReport(
                kind.name, entry["id"], closed.real, oracle.value.real,
                float(utils.rel_err(closed, oracle.value)),
                oracle.terms_used, tolerance, closed.imag,
                oracle.value.imag))
        except NumericalError as error:
            reports.append(_failed(kind.name, entry["id"], tolerance, error))

    for entry in grid.get("series", []):
        quantity = entry["quantity"]
        params = _build_params(quantity, entry.get("params", {}))
        tolerance = entry.get("tol", series_tol)
        try:
            closed = closed_form(quantity, params, entry["at"])
            oracle = direct_series(quantity, params, entry["at"], oracle_tol)
            reports.append(_report(quantity, entry["id"], closed,
                                   oracle.value, oracle.terms_used,
                                   tolerance))
        except NumericalError as error:
            reports.append(_failed(quantity, entry["id"], tolerance, error))

    for entry in grid.get("ode", []):
        quantity = entry["quantity"]
        params = _build_params(quantity, entry.get("params", {}))
        tolerance = entry.get("tol", ode_tol)
        cfg = trajectory_config(params)
        photons, power = integrate_cavity(params, cfg)
        steps = (cfg.periods_transient + cfg.periods_average) * (
            cfg.steps_per_period)
        if quantity == "cavity_photon_number":
            closed, oracle = attractor.photon_number(params), photons
        elif quantity == "cavity_power":
            closed, oracle = attractor.power_input(params), power
        else:
            raise ConfigError(f"unknown ode quantity {quantity!r}",
                              "quantity")
        reports.append(_report(quantity, entry["id"], closed, oracle, steps,
                               tolerance))

    failures = sum(1 for report in reports if not report.passed)
    logger.info("validation: %d points, %d outside tolerance", len(reports),
                failures)
    return reports
