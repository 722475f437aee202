#!/usr/bin/env python
"""maths.py"""
import logging
import math

import numpy as np
from scipy import optimize

from classes.errors import NoConvergence
from modules import config

logger = logging.getLogger(__name__)


def max_iterations():
    """
    Get the iteration cap of the fixed-point solvers.

    Returns:
        - int: SOLVER/MAX ITERATIONS from the config file.
    """
    return config.config_int("SOLVER", "MAX ITERATIONS")


def residual_tol():
    """
    Get the residual a fixed point has to reach.

    Returns:
        - float: SOLVER/RESIDUAL from the config file.
    """
    return config.config_float("SOLVER", "RESIDUAL")


def root_tol():
    """
    Get the tolerance used when refining roots.

    Returns:
        - float: SOLVER/ROOT TOL from the config file.
    """
    return config.config_float("SOLVER", "ROOT TOL")


def sign_changes(func, grid):
    """
    Evaluate a function on a grid and bracket every sign change.

    Args:
        - func: Real function of one variable.
        - grid: Increasing sequence of abscissae.

    Returns:
        - list: (a, b) pairs with func(a) func(b) ≤ 0 and func(a) ≠ 0,
            plus (a, a) for exact zeros on the grid.
    """
    values = [func(x) for x in grid]
    brackets = []
    for i, (x, fx) in enumerate(zip(grid, values)):
        if fx == 0.0:
            brackets.append((x, x))
            continue
        if i + 1 < len(values) and fx * values[i + 1] < 0.0:
            brackets.append((x, grid[i + 1]))
    return brackets


def refine_root(func, a, b, tol=None):
    """
    Refine a bracketed root by bisection.

    Args:
        - func: Real function with a sign change on [a, b].
        - a, b: The bracket.
        - tol: Absolute tolerance on the abscissa; config default if None.

    Returns:
        - float: The root.
    """
    if a == b:
        return float(a)
    if tol is None:
        tol = root_tol()
    # Bisection keeps working where the derivative vanishes
    return float(optimize.bisect(func, a, b, xtol=tol, maxiter=400))


def central_slope(func, x, step=None):
    """
    Central-difference derivative with step 1e-5 max(1, |x|).
    """
    if step is None:
        step = 1e-5 * max(1.0, abs(x))
    return (func(x + step) - func(x - step)) / (2.0 * step)


def golden_maximum(func, grid):
    """
    Maximize a function: coarse scan on a grid, then golden-section search
    around the best sample.

    Args:
        - func: Real function to maximize.
        - grid: Increasing array of scan points.

    Returns:
        - tuple: (x_max, f_max).
    """
    grid = np.asarray(grid, dtype=float)
    values = np.array([func(x) for x in grid])
    best = int(np.argmax(values))

    # Endpoints have nothing to refine against
    if best == 0 or best == len(grid) - 1:
        return float(grid[best]), float(values[best])

    result = optimize.minimize_scalar(
        lambda x: -func(x),
        bracket=(grid[best - 1], grid[best], grid[best + 1]),
        method="golden",
        tol=1e-12,
    )
    if -result.fun < values[best]:
        return float(grid[best]), float(values[best])
    return float(result.x), float(-result.fun)


def damped_fixed_point(mapping, x0, name="fixed point", tol=None,
                       max_iter=None):
    """
    Solve x = mapping(x) by x ← (1−λ) x + λ mapping(x).

    λ starts at 1 and is halved whenever the residual |mapping(x) − x|
    grows; the step is then retried from the previous iterate.

    Args:
        - mapping: Real map of one variable.
        - x0: Starting point.
        - name (str): Used in log and error messages.
        - tol: Residual to reach; config default if None.
        - max_iter: Iteration cap; config default if None.

    Returns:
        - tuple: (x, iterations).
    """
    if tol is None:
        tol = residual_tol()
    if max_iter is None:
        max_iter = max_iterations()

    damping = 1.0
    x = float(x0)
    image = mapping(x)
    residual = abs(image - x)

    for iteration in range(1, max_iter + 1):
        if residual <= tol:
            logger.debug("%s: converged after %d iterations", name,
                         iteration - 1)
            return x, iteration - 1

        candidate = (1.0 - damping) * x + damping * image
        candidate_image = mapping(candidate)
        candidate_residual = abs(candidate_image - candidate)

        if candidate_residual > residual and damping > 1e-12:
            damping /= 2.0
            logger.debug("%s: residual grew, damping now %.3g", name,
                         damping)
            continue

        x, image, residual = candidate, candidate_image, candidate_residual

    if residual <= tol:
        return x, max_iter

    raise NoConvergence(
        f"{name}: residual {residual:.3e} after {max_iter} iterations")


def loglog_slope(x, y):
    """
    Least-squares slope of log|y| against log x.

    Returns:
        - float: The fitted exponent.
    """
    x = np.asarray(x, dtype=float)
    y = np.abs(np.asarray(y, dtype=float))
    keep = (x > 0.0) & (y > 0.0)
    slope, _ = np.polyfit(np.log(x[keep]), np.log(y[keep]), 1)
    return float(slope)


def envelope_peaks(x, y):
    """
    Local maxima of |y|, used to fit the decay of oscillating curves.

    Returns:
        - tuple: (x_peaks, |y|_peaks) as arrays.
    """
    x = np.asarray(x, dtype=float)
    y = np.abs(np.asarray(y, dtype=float))
    inner = (y[1:-1] >= y[:-2]) & (y[1:-1] > y[2:])
    index = np.nonzero(inner)[0] + 1
    return x[index], y[index]


def scan_grid(start, stop, max_step):
    """
    Uniform grid from start to stop with spacing at most max_step.
    """
    count = max(2, int(math.ceil((stop - start) / max_step)) + 1)
    return np.linspace(start, stop, count)
