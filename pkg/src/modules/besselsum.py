#!/usr/bin/env python
"""besselsum.py

Closed forms of Σ_n J_{n-k}(x) J_n(x) / (n + μ) for k = 0, 1, 2, the
direct-summation oracle they are checked against, and the partial-fraction
helpers that bring every physical series onto these three kernels.
"""
import logging
import math

import numpy as np

from classes.errors import ConvergenceError, NearPoleError
from classes.records import SumKind, SumResult
from modules import complexfn
from modules import utils

logger = logging.getLogger(__name__)

INTEGER_GUARD = 1e-12
EXTRA_TERMS = 60


def _check_mu(mu: complex) -> complex:
    mu = complex(mu)
    if abs(mu - round(mu.real)) < INTEGER_GUARD:
        raise NearPoleError(f"mu = {mu} is within {INTEGER_GUARD} of an "
                            "integer")
    return mu


def kernel(shift: int, mu: complex, x: float) -> complex:
    """
    Closed form of Σ_n J_{n-shift}(x) J_n(x) / (n + μ).

        shift 0:  π/sin(πμ) J_{-μ}(x) J_μ(x)
        shift 1: −π/sin(πμ) J_{-μ}(x) J_{μ+1}(x)
        shift 2:  π/sin(πμ) J_{-μ}(x) J_{μ+2}(x)

    Args:
        - shift (int): 0, 1 or 2.
        - mu (complex): Non-integer shift of the denominator.
        - x (float): Argument, any sign.

    Returns:
        - complex: The value of the sum.
    """
    if shift not in (0, 1, 2):
        raise ValueError(f"shift must be 0, 1 or 2, got {shift}")
    mu = _check_mu(mu)

    if x == 0.0:
        # Only J_0(0)^2 survives, and only without a shift
        return 1.0 / mu if shift == 0 else 0j

    # The integer-order products have parity (−1)^shift in x
    parity = -1.0 if (x < 0.0 and shift == 1) else 1.0
    ax = abs(x)

    value = (math.pi / complexfn.sinpi_complex(mu)
             * complexfn.besselj_complex_order(-mu, ax)
             * complexfn.besselj_complex_order(mu + shift, ax))
    if shift == 1:
        value = -value

    return utils.ensure_finite(parity * value, "kernel")


def sum_S0(mu: complex, x: float) -> complex:
    """Σ J_n J_n / (n + μ) = π/sin(πμ) J_{-μ} J_μ."""
    return kernel(0, mu, x)


def sum_S1(mu: complex, x: float) -> complex:
    """Σ J_{n-1} J_n / (n + μ) = −π/sin(πμ) J_{-μ} J_{μ+1}."""
    return kernel(1, mu, x)


def sum_S2(mu: complex, x: float) -> complex:
    """Σ J_{n-2} J_n / (n + μ) = π/sin(πμ) J_{-μ} J_{μ+2}."""
    return kernel(2, mu, x)


def pair_sum(p: int, q: int, mu: complex, x: float) -> complex:
    """
    Σ_n J_{n+p}(x) J_{n+q}(x) / (n + μ) for |p − q| ≤ 2.

    Re-indexing j = n + max(p, q) turns it into kernel |p−q| at
    μ − max(p, q).
    """
    shift = abs(p - q)
    if shift > 2:
        raise ValueError(f"order gap {shift} has no closed form here")
    return kernel(shift, complex(mu) - max(p, q), x)


def partial_fractions(poles) -> list:
    """
    Residues of Π_k 1/(n + a_k) for distinct a_k, so that
    Π_k 1/(n + a_k) = Σ_k res_k / (n + a_k).

    Args:
        - poles: Sequence of complex a_k.

    Returns:
        - list: The residues res_k, in the order of the poles.
    """
    poles = [complex(a) for a in poles]
    residues = []
    for k, a_k in enumerate(poles):
        residue = 1.0 + 0j
        for j, a_j in enumerate(poles):
            if j == k:
                continue
            gap = a_j - a_k
            if abs(gap) < INTEGER_GUARD * max(1.0, abs(a_k)):
                raise NearPoleError(f"poles {a_k} and {a_j} coincide")
            residue /= gap
        residues.append(residue)
    return residues


def reduced_sum(p: int, q: int, poles, x: float) -> complex:
    """
    Σ_n J_{n+p}(x) J_{n+q}(x) / Π_k (n + a_k), through the residues of the
    product and one shifted kernel per pole.

    Args:
        - p, q (int): Order offsets, |p − q| ≤ 2.
        - poles: The distinct a_k.
        - x (float): Argument.

    Returns:
        - complex: The value of the sum.
    """
    residues = partial_fractions(poles)
    return sum(residue * pair_sum(p, q, a, x)
               for residue, a in zip(residues, poles))


def bessel_bound(order, x: float):
    """
    |J_n(x)| ≤ (|x|/2)^|n| / |n|!, elementwise for an array of orders.
    """
    order = np.abs(np.asarray(order, dtype=float))
    if x == 0.0:
        return np.where(order == 0, 1.0, 0.0)
    log_bound = order * math.log(abs(x) / 2.0) - np.vectorize(math.lgamma)(
        order + 1.0)
    return np.exp(np.minimum(log_bound, 700.0))


def tail_bound(x: float, n_trunc: int, offsets, dmin: float) -> float:
    """
    Bound on Σ_{|n| > N} |J_{n+p}(x) J_{n+q}(x)| / dmin over both signs of
    n, for offsets (p, q).

    Valid once N exceeds |x| + max(|p|, |q|), where the bounds decay at
    least geometrically with ratio (|x|/2)/(N + 2 − max(|p|, |q|)).
    """
    if x == 0.0:
        return 0.0
    p, q = (abs(k) for k in offsets)
    ratio = (abs(x) / 2.0) / (n_trunc + 2 - max(p, q))
    if ratio >= 1.0 or dmin <= 0.0:
        return math.inf
    first = float(bessel_bound(n_trunc + 1 - p, x)
                  * bessel_bound(n_trunc + 1 - q, x))
    return 2.0 * first / (dmin * (1.0 - ratio * ratio))


def max_truncation(x: float) -> int:
    """Largest N the direct sums are allowed to grow to."""
    return 10 * int(math.ceil(abs(x))) + 500


def denominator_floor(poles, n_trunc: int, order=None) -> float:
    """
    Lower bound of Π |n + a_k| over |n| > N.

    Args:
        - poles: The a_k.
        - n_trunc (int): N.
        - order (int): Number of linear factors when it differs from the
            number of poles; the smallest single floor is then raised to
            that power.

    Returns:
        - float: The bound, 0 when N is too small to give one.
    """
    floors = [max(abs(complex(a).imag), n_trunc + 1 - abs(complex(a)))
              for a in poles]
    if min(floors) <= 0.0:
        return 0.0
    if order is None:
        return float(np.prod(floors))
    return min(floors) ** order


def direct_sum(term_values, x: float, tol: float, offsets, poles,
               weight: float = 1.0, order=None) -> SumResult:
    """
    Sum a series term by term over |n| ≤ N and certify its tail.

    term_values(orders, jtable) returns the terms for the integer array
    orders, with jtable(k) giving J_{n+k}(x) on the same orders (|k| ≤ 4).
    N starts at ⌈|x|⌉ + 60 and doubles until weight × tail bound ≤ tol.

    Args:
        - term_values: The term callback.
        - x (float): Bessel argument.
        - tol (float): Absolute tolerance for the truncation error.
        - offsets: (p, q), the Bessel order offsets of each term.
        - poles: The a_k of the denominators Π (n + a_k).
        - weight (float): Bound on the constant prefactor.
        - order (int): Passed to denominator_floor.

    Returns:
        - SumResult: value, N and the certified bound.
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    reach = max(abs(k) for k in offsets)
    n_trunc = int(math.ceil(abs(x))) + EXTRA_TERMS + reach
    limit = max_truncation(x)

    while True:
        orders = np.arange(-n_trunc, n_trunc + 1)
        # J over a range wide enough for every shifted index
        table = complexfn.besselj_int_range(-n_trunc - 4, n_trunc + 4, x)

        def jtable(k, _orders=orders, _table=table, _n=n_trunc):
            return _table[_orders + k + _n + 4]

        terms = np.asarray(term_values(orders, jtable), dtype=complex)
        value = complex(math.fsum(terms.real), math.fsum(terms.imag))

        dmin = denominator_floor(poles, n_trunc, order)
        bound = weight * tail_bound(x, n_trunc, offsets, dmin)
        if bound <= tol:
            logger.debug("direct sum: N=%d bound=%.2e", n_trunc, bound)
            return SumResult(value, n_trunc, bound)

        if n_trunc >= limit:
            raise ConvergenceError(
                f"direct sum did not certify tol={tol} within N={limit}")
        n_trunc = min(2 * n_trunc, limit)


def oracle_sum(kind: SumKind, mu: complex, x: float,
               tol: float = 1e-13) -> SumResult:
    """
    Σ_n J_{n-k}(x) J_n(x) / (n + μ) summed term by term over |n| ≤ N,
    with N doubled until the Bessel tail bound certifies tol.

    Args:
        - kind (SumKind): Which product.
        - mu (complex): Denominator shift.
        - x (float): Argument, any sign.
        - tol (float): Absolute tolerance for the truncation error.

    Returns:
        - SumResult: value, N and the certified bound.
    """
    mu = complex(mu)
    shift = kind.shift

    def terms(orders, jtable):
        return jtable(-shift) * jtable(0) / (orders + mu)

    return direct_sum(terms, x, tol, (-shift, 0), [mu])
