#!/usr/bin/env python
"""complexfn.py

Special functions of complex argument and complex order needed by the
closed-form Bessel sums: Γ(z), sin(πz), J_n(x) for integer n, and J_ν(x)
for complex ν and real x ≥ 0.
"""
import cmath
import functools
import logging
import math

import mpmath
import numpy as np

from classes.errors import ConvergenceError, PoleError
from classes.params import SeriesControl
from modules import utils

logger = logging.getLogger(__name__)

DEFAULT_CONTROL = SeriesControl()

# Lanczos approximation, g = 7, nine terms
LANCZOS_G = 7.0
LANCZOS_COEFFICIENTS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

POLE_RADIUS = 1e-14
# π|Im z| above this overflows cosh/sinh in double precision
SINPI_EXPONENT_LIMIT = 700.0
# Acceptance of the large-argument expansion, relative to √(2/πx)
ASYMPTOTIC_TOL = 1e-14


def _sincospi_real(x: float):
    """
    sin(πx) and cos(πx) with exact reduction, so integers give an exact 0
    and half-integers an exact ±1.
    """
    k = round(x)
    f = x - k
    sign = -1.0 if k % 2 else 1.0
    return sign * math.sin(math.pi * f), sign * math.cos(math.pi * f)


def sinpi_complex(z: complex) -> complex:
    """
    sin(πz) for complex z.

    Uses sin(πx)cosh(πy) + i cos(πx)sinh(πy), which has no cancellation
    for large |y|.

    Args:
        - z (complex): The argument.

    Returns:
        - complex: sin(πz).
    """
    z = complex(z)
    exponent = math.pi * abs(z.imag)
    if exponent > SINPI_EXPONENT_LIMIT:
        raise OverflowError(f"sin(pi z) overflows for Im z = {z.imag}")

    s, c = _sincospi_real(z.real)
    y = math.pi * z.imag
    return complex(s * math.cosh(y), c * math.sinh(y))


def _nearest_nonpositive_integer(z: complex):
    if z.real > 0.5:
        return None
    k = round(z.real)
    if abs(z - k) < POLE_RADIUS:
        return k
    return None


def gamma_complex(z: complex) -> complex:
    """
    Γ(z) by the Lanczos approximation, with reflection for Re z < 1/2.

    Args:
        - z (complex): Any complex number off the poles.

    Returns:
        - complex: Γ(z).
    """
    z = complex(z)
    if _nearest_nonpositive_integer(z) is not None:
        raise PoleError(f"Gamma has a pole at z = {z}")

    if z.real < 0.5:
        # Γ(z) Γ(1 − z) = π / sin(πz)
        return math.pi / (sinpi_complex(z) * gamma_complex(1.0 - z))

    z -= 1.0
    series = LANCZOS_COEFFICIENTS[0]
    for i, coefficient in enumerate(LANCZOS_COEFFICIENTS[1:], start=1):
        series += coefficient / (z + i)

    t = z + LANCZOS_G + 0.5
    value = (math.sqrt(2.0 * math.pi) * series
             * cmath.exp((z + 0.5) * cmath.log(t) - t))
    return utils.ensure_finite(value, "gamma")


def besselj_int_table(n_max: int, x: float) -> np.ndarray:
    """
    J_0(x) ... J_{n_max}(x) for x ≥ 0 by Miller's backward recurrence,
    normalized with J_0 + 2 Σ J_{2k} = 1.

    Args:
        - n_max (int): Highest order wanted.
        - x (float): Nonnegative argument.

    Returns:
        - np.ndarray: Array of length n_max + 1.
    """
    n_max = max(int(n_max), 1)
    table = np.zeros(n_max + 1)
    if x == 0.0:
        table[0] = 1.0
        return table

    # Start well above both the requested order and the turning point x
    top = max(n_max, int(math.ceil(x)))
    start = top + 30 + int(math.sqrt(40.0 * top))
    start += start % 2

    values = np.zeros(start + 2)
    values[start] = 1e-300
    for k in range(start, 0, -1):
        values[k - 1] = (2.0 * k / x) * values[k] - values[k + 1]
        if abs(values[k - 1]) > 1e250:
            # Rescale to keep the recurrence in range; tiny tails go to 0
            values[k - 1:] *= 1e-250

    norm = values[0] + 2.0 * np.sum(values[2:start + 1:2])
    table[:] = values[:n_max + 1] / norm
    return table


def besselj_int(n: int, x: float) -> float:
    """
    J_n(x) for integer n and real x, |x| ≤ 1e4.

    Args:
        - n (int): Order, any sign.
        - x (float): Argument, any sign.

    Returns:
        - float: J_n(x).
    """
    n = int(n)
    sign = 1.0
    if n < 0:
        n = -n
        sign *= -1.0 if n % 2 else 1.0
    if x < 0.0:
        x = -x
        sign *= -1.0 if n % 2 else 1.0

    return sign * float(besselj_int_table(n, x)[n])


def besselj_int_range(n_lo: int, n_hi: int, x: float) -> np.ndarray:
    """
    J_n(x) for n = n_lo ... n_hi (inclusive), any signs of n and x.

    Returns:
        - np.ndarray: Values in order of increasing n.
    """
    top = max(abs(n_lo), abs(n_hi))
    table = besselj_int_table(top, abs(x))
    orders = np.arange(n_lo, n_hi + 1)
    values = table[np.abs(orders)]

    # J_{-n} = (-1)^n J_n and J_n(-x) = (-1)^n J_n(x)
    flips = (orders < 0).astype(int) + (1 if x < 0 else 0)
    parity = np.where((np.abs(orders) * flips) % 2 == 1, -1.0, 1.0)
    return values * parity


def _negative_integer_order(nu: complex):
    """Return k ≥ 1 when ν sits on −k, otherwise None."""
    if abs(nu.imag) > POLE_RADIUS or nu.real > -0.5:
        return None
    k = round(-nu.real)
    if abs(nu.real + k) < POLE_RADIUS:
        return k
    return None


def _series_precision(nu: complex, x: float) -> int:
    # Largest term is about e^x; keep 20 digits beyond it
    return 20 + int(0.4343 * x + 0.7 * abs(nu.imag) + 2 * math.log10(
        1.0 + abs(nu)))


def _besselj_series(nu: complex, x: float, ctl: SeriesControl) -> complex:
    """
    Ascending series Σ (−1)^m (x/2)^{ν+2m} / (m! Γ(ν+m+1)), accumulated in
    extended precision so cancellation among the large terms is harmless.
    """
    with mpmath.workdps(_series_precision(nu, x)):
        mnu = mpmath.mpc(nu.real, nu.imag)
        half = mpmath.mpf(x) / 2
        term = mpmath.power(half, mnu) * mpmath.rgamma(mnu + 1)
        total = term
        minus_half_sq = -half * half
        tol = mpmath.mpf(ctl.rel_tol)
        settle = abs(nu) + x / 2.0

        for m in range(1, ctl.max_terms + 1):
            term = term * minus_half_sq / (m * (mnu + m))
            total += term
            if m > settle and abs(term) <= tol * abs(total):
                logger.debug("series J_%s(%s): %d terms", nu, x, m)
                return complex(total)
            if m > settle and total == 0:
                return 0j

    raise ConvergenceError(
        f"J_nu series for nu={nu}, x={x} needs more than "
        f"{ctl.max_terms} terms")


def _besselj_hankel(nu: complex, x: float, ctl: SeriesControl):
    """
    Large-argument expansion √(2/πx) (P cos ω − Q sin ω) summed up to its
    smallest term.

    Returns:
        - tuple: (value, error estimate), the estimate being the first
            omitted term times the prefactor.
    """
    mu = 4.0 * nu * nu
    omega = x - nu * math.pi / 2.0 - math.pi / 4.0
    cos_w, sin_w = cmath.cos(omega), cmath.sin(omega)

    p_sum, q_sum = 0j, 0j
    term = 1.0 + 0j
    previous = math.inf
    estimate = math.inf
    for k in range(ctl.max_terms):
        size = abs(term)
        if size > previous:
            # Divergent tail reached; the last added term bounds the error
            break
        if k % 4 == 0:
            p_sum += term
        elif k % 4 == 1:
            q_sum += term
        elif k % 4 == 2:
            p_sum -= term
        else:
            q_sum -= term
        previous = size
        estimate = size
        if size <= ctl.rel_tol * max(abs(p_sum), 1e-300):
            break
        term = term * (mu - (2 * k + 1) ** 2) / ((k + 1) * 8.0 * x)

    prefactor = math.sqrt(2.0 / (math.pi * x))
    value = prefactor * (p_sum * cos_w - q_sum * sin_w)
    scale = prefactor * max(abs(cos_w), abs(sin_w))
    return value, estimate * scale


@functools.lru_cache(maxsize=8192)
def _besselj_cached(nu_re, nu_im, x, ctl):
    nu = complex(nu_re, nu_im)

    if x == 0.0:
        if nu == 0:
            return 1.0 + 0j
        if nu.real > 0.0:
            return 0j
        raise PoleError(f"J_nu(0) is not defined for nu = {nu}")

    k = _negative_integer_order(nu)
    if k is not None:
        return complex(besselj_int(-k, x))

    if x > ctl.arg_switch:
        value, err = _besselj_hankel(nu, x, ctl)
        scale = math.sqrt(2.0 / (math.pi * x)) * math.cosh(
            math.pi * nu.imag / 2.0)
        if err <= max(ctl.rel_tol, ASYMPTOTIC_TOL) * scale:
            return value
        logger.debug("Hankel expansion rejected for nu=%s, x=%s (err %.2e)",
                     nu, x, err)

    return _besselj_series(nu, x, ctl)


def besselj_complex_order(nu: complex, x: float,
                          ctl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """
    J_ν(x) for complex order ν and real x ≥ 0.

    Args:
        - nu (complex): The order.
        - x (float): Nonnegative argument.
        - ctl (SeriesControl): Truncation and regime settings.

    Returns:
        - complex: J_ν(x).
    """
    if x < 0.0:
        raise ValueError(f"x must be nonnegative, got {x}")
    nu = complex(nu)
    value = _besselj_cached(nu.real, nu.imag, float(x), ctl)
    return utils.ensure_finite(value, "besselj")


def besselj_complex_order_asymptotic(nu: complex, x: float) -> complex:
    """Leading large-x form √(2/πx) cos(x − νπ/2 − π/4)."""
    nu = complex(nu)
    return (math.sqrt(2.0 / (math.pi * x))
            * cmath.cos(x - nu * math.pi / 2.0 - math.pi / 4.0))


def bessel_product_series(nu: complex, mu: complex, x: float,
                          ctl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """
    J_ν(x) J_μ(x) from the single product series
    Σ (−1)^m (x/2)^{ν+μ+2m} (ν+μ+m+1)_m / (m! Γ(ν+m+1) Γ(μ+m+1)).

    Used for the small-argument behaviour of the kernel products.
    """
    nu, mu = complex(nu), complex(mu)
    with mpmath.workdps(_series_precision(nu + mu, 2.0 * x)):
        mnu = mpmath.mpc(nu.real, nu.imag)
        mmu = mpmath.mpc(mu.real, mu.imag)
        half = mpmath.mpf(x) / 2
        total = mpmath.mpc(0)
        tol = mpmath.mpf(ctl.rel_tol)
        settle = abs(nu) + abs(mu) + x

        for m in range(ctl.max_terms):
            term = ((-1) ** m * mpmath.power(half, mnu + mmu + 2 * m)
                    * mpmath.rf(mnu + mmu + m + 1, m)
                    * mpmath.rgamma(mnu + m + 1) * mpmath.rgamma(mmu + m + 1)
                    / mpmath.factorial(m))
            total += term
            if m > settle and abs(term) <= tol * abs(total):
                return complex(total)

    raise ConvergenceError(
        f"product series for ({nu}, {mu}, {x}) did not converge")
