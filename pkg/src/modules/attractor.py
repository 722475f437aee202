#!/usr/bin/env python
"""attractor.py

Driven cavity with a mirror moving as x(t) = x̄ + A cos(Ω_m t): Fourier
coefficients of the field, exact and large-amplitude averages of the
radiation force and of the power it feeds into the mirror, the
small-amplitude stability ratio and the attractor diagram.

Units: ħ = 1. The force is F = G|α|², the power input is ⟨|α|²ẋ⟩.
"""
import dataclasses
import logging
import math

import numpy as np

from classes.errors import NoConvergence, NumericalError
from classes.params import AttractorParams
from classes.records import SweepRecord
from modules import besselsum
from modules import complexfn
from modules import maths

logger = logging.getLogger(__name__)

CONTINUATION_STEPS = 8


def alpha_n(n: int, p: AttractorParams) -> complex:
    """
    Fourier coefficient α_n = α_max c J_n(X) / (c + i(n − r)).

    Args:
        - n (int): Sideband index.
        - p (AttractorParams): The parameter set.

    Returns:
        - complex: α_n, with α_max taken real and positive.
    """
    jn = complexfn.besselj_int(n, p.X)
    return p.alpha_max * p.c * jn / complex(p.c, n - p.r)


def photon_number(p: AttractorParams) -> float:
    """
    ⟨|α|²⟩ = Σ |α_n|² = −|α_max|² c Im S0(ν, X).

    The n-th denominator is i(n + ν*), so the partial fractions of
    1/|n + ν|² reduce the sum to a single S0 kernel.
    """
    if p.alpha_max_sq == 0.0:
        return 0.0
    s0 = besselsum.sum_S0(p.nu, p.X)
    return -p.alpha_max_sq * p.c * s0.imag


def force_avg(p: AttractorParams) -> float:
    """
    Time-averaged radiation force ⟨F⟩ = G ⟨|α|²⟩.

    Args:
        - p (AttractorParams): The parameter set.

    Returns:
        - float: The average force.
    """
    return p.G * photon_number(p)


def sideband_overlap(p: AttractorParams) -> complex:
    """
    W = Σ α_n* α_{n+1}.

    With α_n = −i α_max c J_n/(n + ν*) the denominators split as
    [1/(n+ν) − 1/(n+1+ν*)] / (1 − 2ic), two shifted S1 kernels.
    """
    nu = p.nu
    first = besselsum.pair_sum(0, 1, nu, p.X)
    second = besselsum.pair_sum(0, 1, 1.0 + nu.conjugate(), p.X)
    prefactor = p.alpha_max_sq * p.c ** 2 / complex(1.0, -2.0 * p.c)
    return prefactor * (first - second)


def power_input(p: AttractorParams) -> float:
    """
    Time-averaged power input ⟨|α|²ẋ⟩ = A Ω_m Im Σ α_n* α_{n+1}.

    Args:
        - p (AttractorParams): The parameter set.

    Returns:
        - float: The average power; 0 when A = 0.
    """
    if p.A == 0.0 or p.alpha_max_sq == 0.0:
        return 0.0
    return p.A * p.Omega_m * sideband_overlap(p).imag


def _b_coefficient(c: float, r: float) -> float:
    return math.sinh(math.pi * c) / (
        math.cosh(2.0 * math.pi * c) - math.cos(2.0 * math.pi * r))


def force_avg_asymptotic(p: AttractorParams) -> float:
    """
    Large-amplitude force
    (κ|α_max|²/A) b (cosh(πc) + cos(πr) sin(2GA/Ω_m)),
    b = sinh(πc) / (cosh(2πc) − cos(2πr)).

    The + before cos(πr) is the sign the exact sum gives; force_avg
    agrees with this form at large A and not with a minus there.
    """
    c, r = p.c, p.r
    b = _b_coefficient(c, r)
    oscillation = math.cos(math.pi * r) * math.sin(2.0 * abs(p.X))
    return (p.kappa * p.alpha_max_sq / p.A) * b * (
        math.cosh(math.pi * c) + oscillation)


def power_input_asymptotic(p: AttractorParams) -> float:
    """
    Large-amplitude power, of zero order in A:
    −(κ²|α_max|²/4G) 8c cosh(πc) sin(πr) cos(2X)
        / ((1 + 4c²)(cosh(2πc) − cos(2πr))).
    """
    c, r = p.c, p.r
    numerator = (8.0 * c * math.cosh(math.pi * c)
                 * math.sin(math.pi * r) * math.cos(2.0 * p.X))
    denominator = (1.0 + 4.0 * c * c) * (
        math.cosh(2.0 * math.pi * c) - math.cos(2.0 * math.pi * r))
    scale = p.kappa ** 2 * p.alpha_max_sq / (4.0 * p.G)
    return -scale * numerator / denominator


def sideband_limit(r: float, c: float, regime: str) -> float:
    """
    Coefficient k of the large-amplitude power (κ²|α_max|²/4G) k cos(2X)
    in the sideband limits at r = 1/4 and r = 1/2.

    Args:
        - r (float): 0.25 or 0.5.
        - c (float): κ/2Ω_m.
        - regime (str): "resolved" (c ≫ 1) or "unresolved" (c ≪ 1).

    Returns:
        - float: The limiting coefficient.
    """
    if regime not in ("resolved", "unresolved"):
        raise ValueError(f"unknown regime {regime!r}")

    if math.isclose(r, 0.25):
        if regime == "resolved":
            return -math.sqrt(2.0) * math.exp(-math.pi * c) / c
        return -4.0 * math.sqrt(2.0) * c
    if math.isclose(r, 0.5):
        if regime == "resolved":
            return -2.0 * math.exp(-math.pi * c) / c
        return -4.0 * c

    raise ValueError(f"no sideband limit tabulated for r = {r}")


def _lorentz_product(r: float, c: float) -> float:
    return (r * r + c * c) * (c * c + (r - 1.0) ** 2) * (c * c + (r + 1.0) ** 2)


def power_input_small_amplitude(p: AttractorParams) -> float:
    """Leading term for |X| ≪ 1: 2 G A² |α_max|² c³ r / Π(r, c)."""
    c, r = p.c, p.r
    return (2.0 * p.G * p.A ** 2 * p.alpha_max_sq * c ** 3 * r
            / _lorentz_product(r, c))


def small_amp_ratio(r: float, c: float, coupling: float) -> float:
    """
    Small-amplitude power over P_fric = π A² Ω_m:
    f(r) = 2 coupling c³ r / (π (r²+c²)(c²+(r−1)²)(c²+(r+1)²)).

    Args:
        - r (float): Scaled detuning.
        - c (float): κ/2Ω_m, positive.
        - coupling (float): G|α_max|²/Ω_m.

    Returns:
        - float: f(r), with the sign of r.
    """
    if not c > 0.0:
        raise ValueError("c must be positive")
    return 2.0 * coupling * c ** 3 * r / (math.pi * _lorentz_product(r, c))


def stability_extrema_scan(coupling: float, c_grid) -> list:
    """
    For each c, the r ≥ 0 maximizing |f(r)| and the value there.

    f is odd in r, so the search runs over r ≥ 0 only; the grid extends
    past the large-c maximum near c²/5.

    Returns:
        - list: (c, r_max, f_max) tuples in the order of c_grid.
    """
    extrema = []
    for c in c_grid:
        if not c > 0.0:
            raise ValueError("c_grid must be positive")
        r_stop = 5.0 + c * c
        count = max(2001, int(math.ceil(8.0 * r_stop / c)) + 1)
        grid = np.linspace(0.0, r_stop, count)

        r_max, f_max = maths.golden_maximum(
            lambda r, c=c: abs(small_amp_ratio(r, c, coupling)), grid)
        extrema.append((float(c), r_max, f_max))
        logger.debug("c=%g: r_max=%.6g f_max=%.6g", c, r_max, f_max)
    return extrema


def balance_residual(p: AttractorParams) -> float:
    """m Ω_m² x̄ − ⟨F⟩."""
    return p.mass * p.Omega_m ** 2 * p.xbar - force_avg(p)


def _balance_map(p: AttractorParams):
    stiffness = p.mass * p.Omega_m ** 2

    def mapping(xbar):
        return force_avg(dataclasses.replace(p, xbar=xbar)) / stiffness

    return mapping


def solve_xbar(p: AttractorParams, A: float) -> float:
    """
    Mean displacement from the force balance m Ω_m² x̄ = ⟨F⟩(x̄, A).

    The drive is ramped from 0 to |α_max|² and each step restarts the
    damped fixed-point iteration from the previous solution, so the result
    lies on the branch connected to x̄ = 0 at zero drive.

    Args:
        - p (AttractorParams): Parameters; p.xbar is ignored.
        - A (float): Oscillation amplitude.

    Returns:
        - float: The solved x̄.
    """
    p = dataclasses.replace(p, A=A, xbar=0.0)
    if p.alpha_max_sq == 0.0:
        return 0.0

    xbar = 0.0
    for step in range(1, CONTINUATION_STEPS + 1):
        drive = p.alpha_max_sq * step / CONTINUATION_STEPS
        ramped = dataclasses.replace(p, alpha_max_sq=drive)
        xbar, iterations = maths.damped_fixed_point(
            _balance_map(ramped), xbar, name="force balance")
        logger.debug("force balance at drive %.4g: x̄=%.10g (%d iterations)",
                     drive, xbar, iterations)
    return xbar


def enumerate_xbar(p: AttractorParams, A: float, window, count=400) -> list:
    """
    Every force-balance solution inside a window of x̄, by sign-change
    bracketing of m Ω_m² x̄ − ⟨F⟩ on count points and bisection.

    Args:
        - p (AttractorParams): Parameters; p.xbar is ignored.
        - A (float): Oscillation amplitude.
        - window: (x_lo, x_hi).
        - count (int): Number of scan points.

    Returns:
        - list: The solutions, ascending.
    """
    x_lo, x_hi = window
    if not x_lo < x_hi:
        raise ValueError("window must be increasing")
    p = dataclasses.replace(p, A=A)

    def residual(xbar):
        return balance_residual(dataclasses.replace(p, xbar=xbar))

    grid = np.linspace(x_lo, x_hi, max(int(count), 2))
    roots = [maths.refine_root(residual, a, b)
             for a, b in maths.sign_changes(residual, grid)]
    return sorted(roots)


def friction_power(p: AttractorParams, A: float) -> float:
    """P_fric = Γ_M ⟨ẋ²⟩ with ⟨ẋ²⟩ = A² Ω_m² / 2."""
    return p.Gamma_M * A * A * p.Omega_m ** 2 / 2.0


def attractor_sweep(A_values, Delta_values, p: AttractorParams,
                    self_consistent: bool = False) -> list:
    """
    Ratio of radiation power input to friction loss over an (A, Δ) grid.

    Rows come out A-major. A cell whose force balance fails is kept with
    ok = False and NaN values.

    Args:
        - A_values: Amplitudes.
        - Delta_values: Detunings.
        - p (AttractorParams): Remaining parameters.
        - self_consistent (bool): Solve x̄ per cell instead of using p.xbar.

    Returns:
        - list: SweepRecord per cell.
    """
    records = []
    for A in A_values:
        for Delta in Delta_values:
            cell = dataclasses.replace(p, A=float(A), Delta=float(Delta))
            try:
                if self_consistent:
                    cell = dataclasses.replace(
                        cell, xbar=solve_xbar(cell, float(A)))
                force = force_avg(cell)
                power = power_input(cell)
            except (NoConvergence, NumericalError) as error:
                logger.warning("sweep cell A=%g Delta=%g failed: %s",
                               A, Delta, error)
                records.append(SweepRecord(float(A), float(Delta), math.nan,
                                           math.nan, math.nan, math.nan,
                                           ok=False))
                continue

            loss = friction_power(cell, float(A))
            ratio = power / loss if loss > 0.0 else math.nan
            records.append(SweepRecord(float(A), float(Delta), cell.xbar,
                                       ratio, force, power))
    return records
