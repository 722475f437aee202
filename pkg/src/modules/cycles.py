#!/usr/bin/env python
"""cycles.py

Drift and diffusion of the mechanical amplitude r in the Fokker-Planck
description of the optomechanical limit cycles, their near-resonance and
large-amplitude forms, the limit cycles themselves and the effective
detuning of the dynamical setting.

All Bessel functions take the argument ηr with η = 2g0/ω_m. Every infinite
sum is brought onto the kernels of besselsum with h_n = iω_m(n − ν),
h_n* = −iω_m(n − ν*).
"""
import dataclasses
import logging
import math

from classes.errors import DegenerateDetuning, ParameterMismatch
from classes.params import CycleParams
from classes.records import LimitCycle, PartialFractionConstants
from modules import besselsum
from modules import complexfn
from modules import maths

logger = logging.getLogger(__name__)

DETUNING_GUARD = 1e-12


def _argument(r: float, p: CycleParams) -> float:
    if r < 0.0:
        raise ValueError(f"r must be nonnegative, got {r}")
    return p.eta * r


def _check_detuning(p: CycleParams) -> None:
    gap = p.Delta_tilde_eff - p.Delta_eff
    for pole in (p.omega_m + gap, p.omega_m - gap):
        if abs(pole) < DETUNING_GUARD * p.omega_m:
            raise DegenerateDetuning(
                f"Delta_tilde_eff - Delta_eff = {gap} hits +-omega_m")


def partial_fraction_constants(p: CycleParams) -> PartialFractionConstants:
    """
    Constants reducing the diffusion denominators to single h factors.

    With δ = ω_m + Δ̃_eff − Δ_eff:
        κ/(|h_n|²|h̃_{n−1}|²) = Re[B/h_n + B/h̃*_{n−1}],  B = 1/(δ(δ − 2iκ))
        1/(h_n h̃_{n−1} h*_{n−2}) = C1/h_n − C2/h̃_{n−1} − C3/h*_{n−2}

    Args:
        - p (CycleParams): The parameter set.

    Returns:
        - PartialFractionConstants: B, C1, C2, C3, the Wigner constant A_w
            and β = ω_m − 2iκ.
    """
    _check_detuning(p)
    omega, kappa = p.omega_m, p.kappa
    gap = p.Delta_tilde_eff - p.Delta_eff
    delta = omega + gap

    B = 1.0 / (delta * complex(delta, -2.0 * kappa))
    C1 = 1.0 / (2.0 * delta * complex(omega, -kappa))
    C2 = 1.0 / (delta * complex(omega - gap, -2.0 * kappa))
    C3 = 1.0 / (2.0 * complex(omega, -kappa) * complex(omega - gap,
                                                       -2.0 * kappa))
    A_w = 1.0 / complex(delta, -2.0 * kappa)
    return PartialFractionConstants(B, C1, C2, C3, A_w, p.beta)


def drift_optical(r: float, p: CycleParams) -> float:
    """
    Optical part of the drift, g0E² Σ Im[J_{n−1}J_n/(h_{n−1}h_n*)].

    Closed form (πg0E²/ω_m) Re[(J_{1+ν}J_{−ν}/sin πν
    + J_{ν*}J_{1−ν*}/sin πν*) / (2κ − iω_m)], evaluated through the S1
    kernel so that r = 0 needs no special case.
    """
    x = _argument(r, p)
    omega = p.omega_m
    nu = p.nu
    # 1/((n−1−ν)(n−ν*)) = res [1/(n−1−ν) − 1/(n−ν*)]
    residue = omega / complex(omega, 2.0 * p.kappa)
    kernels = besselsum.sum_S1(-1.0 - nu, x) - besselsum.sum_S1(
        -nu.conjugate(), x)
    return p.g0 * p.E ** 2 / omega ** 2 * (residue * kernels).imag


def drift_mu(r: float, p: CycleParams) -> float:
    """
    Drift μ(r) = −γr + optical part.

    Args:
        - r (float): Amplitude, r ≥ 0.
        - p (CycleParams): The parameter set; Δ̃_eff is not used.

    Returns:
        - float: μ(r).
    """
    return -p.gamma * r + drift_optical(r, p)


def diffusion_D(r: float, p: CycleParams) -> float:
    """
    Diffusion of the Q-function equation,
    D = γ(n̄+1)/2 + (g0²E²/2) Σ (κJ_n²/(|h_n|²|h̃_{n−1}|²)
        − Re[J_{n−2}J_n/(h̃_{n−1}h*_{n−2}h_n)]),
    assembled from the constants B, C1-C3 and the S0/S2 kernels.

    Args:
        - r (float): Amplitude, r ≥ 0.
        - p (CycleParams): The parameter set.

    Returns:
        - float: D(r).
    """
    constants = partial_fraction_constants(p)
    x = _argument(r, p)
    i_omega = 1j * p.omega_m
    nu, nu_tilde = p.nu, p.nu_tilde

    # Σ J_n² (1/h_n) and Σ J_n² (1/h̃*_{n−1})
    square_h = besselsum.sum_S0(-nu, x) / i_omega
    square_tilde = besselsum.sum_S0(-1.0 - nu_tilde.conjugate(), x) / (
        -i_omega)
    lorentz = (constants.B * (square_h + square_tilde)).real

    # Σ J_{n−2} J_n over h_n, h̃_{n−1} and h*_{n−2}
    cross_h = besselsum.sum_S2(-nu, x) / i_omega
    cross_tilde = besselsum.sum_S2(-1.0 - nu_tilde, x) / i_omega
    cross_conj = besselsum.sum_S2(-2.0 - nu.conjugate(), x) / (-i_omega)
    cross = (constants.C1 * cross_h - constants.C2 * cross_tilde
             - constants.C3 * cross_conj).real

    thermal = p.gamma * (p.nbar + 1.0) / 2.0
    return thermal + p.g0 ** 2 * p.E ** 2 / 2.0 * (lorentz - cross)


def _wigner_thermal(p: CycleParams) -> float:
    return p.gamma * (2.0 * p.nbar + 1.0) / 4.0


def _wigner_series(r: float, p: CycleParams) -> float:
    """
    Σ κ/|h̃_{n+1}|² |J_{n+2}/h_{n+2} − J_n/h_n|², split into its two
    squared terms and twice the real part of one cross term, each a
    four-pole rational function of n.
    """
    x = _argument(r, p)
    nu, nu_tilde = p.nu, p.nu_tilde
    tilde_poles = [1.0 - nu_tilde, 1.0 - nu_tilde.conjugate()]
    scale = p.kappa / p.omega_m ** 4

    upper = besselsum.reduced_sum(
        2, 2, tilde_poles + [2.0 - nu, 2.0 - nu.conjugate()], x)
    lower = besselsum.reduced_sum(
        0, 0, tilde_poles + [-nu, -nu.conjugate()], x)
    cross = besselsum.reduced_sum(
        0, 2, tilde_poles + [-nu, 2.0 - nu.conjugate()], x)
    return scale * (upper.real + lower.real - 2.0 * cross.real)


def wigner_diffusion_general(r: float, p: CycleParams) -> float:
    """
    Diffusion of the Wigner-function equation for any Δ̃_eff,
    D_W = γ(2n̄+1)/4 + (g0²E²/4) Σ κ/|h̃_{n+1}|² (…).

    Args:
        - r (float): Amplitude, r ≥ 0.
        - p (CycleParams): The parameter set.

    Returns:
        - float: D_W(r).
    """
    _check_detuning(p)
    optical = p.g0 ** 2 * p.E ** 2 / 4.0 * _wigner_series(r, p)
    return _wigner_thermal(p) + optical


def _wigner_terms(x: float, p: CycleParams):
    """D_W⁽¹⁾, D_W⁽²⁾ and D_W⁽³⁾ for Δ̃_eff = Δ_eff, at x > 0."""
    omega, kappa, beta = p.omega_m, p.kappa, p.beta
    nu = p.nu

    def J(order):
        return complexfn.besselj_complex_order(order, x)

    s = complexfn.sinpi_complex(nu)
    s_conj = s.conjugate()
    j_nu, j_minus = J(nu), J(-nu)
    j_plus1, j_minus_plus1 = J(nu + 1.0), J(-nu - 1.0)
    j_nu_minus1, j_one_minus = J(nu - 1.0), J(1.0 - nu)
    j_plus2, j_two_minus = J(nu + 2.0), J(2.0 - nu)
    prefactor = -math.pi / omega ** 2

    first = prefactor * (j_minus * j_nu / (beta * s)
                         - j_plus1 * j_minus_plus1 / (beta.conjugate() * s)
                         ).imag
    second = prefactor * (j_minus * j_nu / (beta.conjugate() * s)
                          - j_nu_minus1 * j_one_minus / (beta * s)).imag

    # J at conjugate orders are conjugates, the argument being real
    bracket = (kappa / complex(omega, kappa)
               * (j_plus2 * j_minus / s
                  - (j_nu * j_two_minus).conjugate() / s_conj)
               - 1j * j_plus1 * j_one_minus / s
               + 1j * (j_plus1 * j_one_minus).conjugate() / s_conj)
    third = math.pi / (2.0 * omega ** 2 * complex(omega, 2.0 * kappa)) * (
        bracket)
    return first, second, third


def wigner_diffusion(r: float, p: CycleParams) -> float:
    """
    D_W for Δ̃_eff = Δ_eff,
    γ(2n̄+1)/4 + (g0²E²/4)(D_W⁽¹⁾ + D_W⁽²⁾ + D_W⁽³⁾ + D_W⁽³⁾*).

    Args:
        - r (float): Amplitude, r ≥ 0.
        - p (CycleParams): The parameter set.

    Returns:
        - float: D_W(r).
    """
    scale = DETUNING_GUARD * max(1.0, abs(p.Delta_eff))
    if abs(p.Delta_tilde_eff - p.Delta_eff) > scale:
        raise ParameterMismatch(
            "wigner_diffusion needs Delta_tilde_eff == Delta_eff; use "
            "wigner_diffusion_general")

    x = _argument(r, p)
    if x == 0.0:
        # J_{−ν}(0) is singular term by term; the sum itself is finite
        return wigner_diffusion_general(r, p)

    first, second, third = _wigner_terms(x, p)
    optical = first + second + 2.0 * third.real
    return _wigner_thermal(p) + p.g0 ** 2 * p.E ** 2 / 4.0 * optical


def optical_wigner_part(r: float, p: CycleParams) -> float:
    """D_W without the thermal term; nonnegative term by term."""
    _check_detuning(p)
    return p.g0 ** 2 * p.E ** 2 / 4.0 * _wigner_series(r, p)


def wigner_diffusion_resonant_approx(r: float, p: CycleParams) -> float:
    """
    n = 0 truncation of D_W,
    γ(2n̄+1)/4 + (κg0²E²/ω_m⁴)(J1²(ηr) + ω_m²J0²(ηr)/(2(κ² + Δ_eff²))).
    """
    x = _argument(r, p)
    omega = p.omega_m
    j0 = complexfn.besselj_int(0, x)
    j1 = complexfn.besselj_int(1, x)
    resonance = omega ** 2 * j0 ** 2 / (2.0 * (p.kappa ** 2
                                               + p.Delta_eff ** 2))
    return _wigner_thermal(p) + (p.kappa * p.g0 ** 2 * p.E ** 2
                                 / omega ** 4) * (j1 ** 2 + resonance)


def gamma_opt(r: float, p: CycleParams) -> float:
    """
    Optical damping γ_opt = −μ_optical(r)/r.

    Args:
        - r (float): Amplitude, r > 0.
        - p (CycleParams): The parameter set.

    Returns:
        - float: γ_opt(r).
    """
    if not r > 0.0:
        raise ValueError("gamma_opt needs r > 0")
    return -drift_optical(r, p) / r


def gamma_opt_resonant_approx(r: float, p: CycleParams) -> float:
    """
    γ_opt from the n = 0, 1 terms of the drift with h_{±1} ≈ ±iω_m:
    −(g0E²/ω_m²)(4κΔ_eff/(κ² + Δ_eff²)) J0(ηr)J1(ηr)/r.
    """
    if not r > 0.0:
        raise ValueError("gamma_opt_resonant_approx needs r > 0")
    x = _argument(r, p)
    lorentz = 4.0 * p.kappa * p.Delta_eff / (p.kappa ** 2 + p.Delta_eff ** 2)
    j0 = complexfn.besselj_int(0, x)
    j1 = complexfn.besselj_int(1, x)
    return -p.gamma0 * lorentz * j0 * j1 / r


def gamma_eff(r: float, p: CycleParams, use_approx: bool = False) -> float:
    """Effective damping γ + γ_opt(r); μ(r) = −r γ_eff(r)."""
    if use_approx:
        return p.gamma + gamma_opt_resonant_approx(r, p)
    return p.gamma + gamma_opt(r, p)


def find_limit_cycles(p: CycleParams, r_min: float, r_max: float,
                      use_approx: bool = False) -> list:
    """
    Zeros of γ_eff on [r_min, r_max].

    The scan step is min(0.05, π/(4η)) so no Bessel oscillation is
    skipped; each sign change is bisected and the slope taken by central
    difference. Sign changes whose bisected residual stays above
    root_tol are dropped.

    Args:
        - p (CycleParams): The parameter set.
        - r_min, r_max (float): Scan interval, 0 < r_min < r_max.
        - use_approx (bool): Use the near-resonance γ_opt.

    Returns:
        - list: LimitCycle records, ascending in r0.
    """
    if not 0.0 < r_min < r_max:
        raise ValueError("need 0 < r_min < r_max")

    def damping(r):
        return gamma_eff(r, p, use_approx)

    step = 0.05
    if p.eta > 0.0:
        step = min(step, math.pi / (4.0 * p.eta))
    grid = maths.scan_grid(r_min, r_max, step)

    cycles = []
    for a, b in maths.sign_changes(damping, grid):
        r0 = maths.refine_root(damping, a, b, tol=1e-13)
        slope = maths.central_slope(damping, r0)
        residual = abs(damping(r0))
        scale = max(1.0, abs(damping(a)), abs(damping(b)))
        if residual > maths.root_tol() * scale:
            # A sign change across a jump, not a zero
            logger.warning("dropping sign change at r=%.6g, residual %.2e",
                           r0, residual)
            continue
        cycles.append(LimitCycle(r0, slope, slope > 0.0))

    logger.debug("found %d limit cycles on [%g, %g]", len(cycles), r_min,
                 r_max)
    return sorted(cycles, key=lambda cycle: cycle.r0)


def drift_mu_asymptotic(r: float, p: CycleParams) -> float:
    """
    Large-amplitude drift,
    −γr − 8E²g0κ sin(πΔ/ω_m) cosh(πκ/ω_m) cos(2ηr)
        / (ηr ω_m (4κ² + ω_m²)(cosh(2πκ/ω_m) − cos(2πΔ/ω_m))),
    with Δ = Δ_eff.
    """
    x = _argument(r, p)
    omega, kappa = p.omega_m, p.kappa
    a, b = p.Delta_eff / omega, kappa / omega
    sin_a = complexfn.sinpi_complex(a).real
    cos_2a = math.cos(2.0 * math.pi * a)

    numerator = (8.0 * p.E ** 2 * p.g0 * kappa * sin_a
                 * math.cosh(math.pi * b) * math.cos(2.0 * x))
    denominator = (x * omega * (4.0 * kappa ** 2 + omega ** 2)
                   * (math.cosh(2.0 * math.pi * b) - cos_2a))
    return -p.gamma * r - numerator / denominator


def delta_eff_rhs(delta_eff: float, r: float, p: CycleParams) -> float:
    """
    Right side of Δ_eff = Δ + 2KE² Σ J_n²/|κ + i(nω_m − Δ_eff)|².

    The sum is Im S0(−ν)/(ω_m κ) with ν built from delta_eff.
    """
    x = _argument(r, p)
    nu = complex(delta_eff, p.kappa) / p.omega_m
    lorentz = besselsum.sum_S0(-nu, x).imag / (p.omega_m * p.kappa)
    return p.Delta + 2.0 * p.K * p.E ** 2 * lorentz


def solve_delta_eff(r: float, p: CycleParams) -> float:
    """
    Self-consistent effective detuning at amplitude r, by damped
    iteration from Δ_eff = Δ.

    Args:
        - r (float): Amplitude, r ≥ 0.
        - p (CycleParams): The parameter set; p.Delta_eff is ignored.

    Returns:
        - float: Δ_eff(r).
    """
    if p.K == 0.0 or p.E == 0.0:
        return p.Delta

    delta_eff, iterations = maths.damped_fixed_point(
        lambda d: delta_eff_rhs(d, r, p), p.Delta, name="Delta_eff")
    logger.debug("Delta_eff(r=%g) = %.12g after %d iterations", r, delta_eff,
                 iterations)
    return delta_eff


def delta_eff_asymptotic(r: float, p: CycleParams,
                         small_delta: bool = False) -> float:
    """
    Large-amplitude effective detuning.

    General form, with the right side evaluated at Δ_eff = Δ:
        Δ + (4KE²/(κω_m ηr)) sinh(πκ/ω_m)/(cosh(2πκ/ω_m) − cos(2πΔ/ω_m))
            (cosh(πκ/ω_m) + cos(πΔ/ω_m) sin(2ηr))
    Δ_eff ≪ ω_m form:
        Δ + (2KE²/(κω_m ηr)) (cosh(πκ/ω_m) + sin(2ηr)) / sinh(πκ/ω_m)

    Both + signs before the oscillating terms follow from the exact sum;
    delta_eff_rhs matches them at large ηr.
    """
    x = _argument(r, p)
    omega, kappa = p.omega_m, p.kappa
    b = kappa / omega
    strength = p.K * p.E ** 2 / (kappa * omega * x)

    if small_delta:
        return p.Delta + 2.0 * strength * (
            math.cosh(math.pi * b) + math.sin(2.0 * x)) / math.sinh(
            math.pi * b)

    a = p.Delta / omega
    shape = math.sinh(math.pi * b) / (
        math.cosh(2.0 * math.pi * b) - math.cos(2.0 * math.pi * a))
    return p.Delta + 4.0 * strength * shape * (
        math.cosh(math.pi * b) + math.cos(math.pi * a) * math.sin(2.0 * x))


def drift_mu_dynamical(r: float, p: CycleParams) -> float:
    """
    Drift with Δ_eff solved at r first (dynamical setting); the doubled
    Kerr shift gives Δ̃_eff − Δ = 2(Δ_eff − Δ).
    """
    delta_eff = solve_delta_eff(r, p)
    shifted = dataclasses.replace(
        p, Delta_eff=delta_eff,
        Delta_tilde_eff=p.Delta + 2.0 * (delta_eff - p.Delta))
    return drift_mu(r, shifted)


def drift_envelope_exponent(p: CycleParams, x_min: float = 20.0,
                            x_max: float = 200.0, count: int = 2000,
                            asymptotic: bool = False) -> float:
    """
    Decay exponent of the optical drift envelope over ηr ∈ [x_min, x_max],
    fitted on the local maxima of |μ + γr| in log-log scale.
    """
    if not p.eta > 0.0:
        raise ValueError("need eta > 0")
    grid = [x / p.eta for x in
            maths.scan_grid(x_min, x_max, (x_max - x_min) / count)]
    func = drift_mu_asymptotic if asymptotic else drift_mu
    values = [func(r, p) + p.gamma * r for r in grid]
    peaks_r, peaks_mu = maths.envelope_peaks(grid, values)
    return -maths.loglog_slope(peaks_r, peaks_mu)
