"""test_maths.py"""
import math

import numpy as np
import pytest

from classes.errors import NoConvergence
from modules import maths


def test_sign_changes_brackets_roots():
    grid = np.linspace(0.0, 10.0, 101)
    brackets = maths.sign_changes(math.sin, grid)
    assert brackets[0] == (0.0, 0.0)
    roots = [maths.refine_root(math.sin, a, b) for a, b in brackets[1:]]
    assert roots == pytest.approx([math.pi, 2.0 * math.pi, 3.0 * math.pi],
                                  abs=1e-9)


def test_central_slope():
    assert maths.central_slope(math.exp, 1.0) == pytest.approx(math.e,
                                                               rel=1e-9)


def test_golden_maximum_refines_the_scan():
    x_max, f_max = maths.golden_maximum(lambda x: -(x - 0.37) ** 2 + 2.0,
                                        np.linspace(0.0, 1.0, 11))
    assert x_max == pytest.approx(0.37, abs=1e-6)
    assert f_max == pytest.approx(2.0, abs=1e-12)


def test_golden_maximum_at_the_edge():
    assert maths.golden_maximum(lambda x: x, [0.0, 0.5, 1.0]) == (1.0, 1.0)


def test_damped_fixed_point_handles_overshoot():
    # Plain iteration of x -> 3 - 2x diverges; damping converges to 1
    x, iterations = maths.damped_fixed_point(lambda x: 3.0 - 2.0 * x, 0.0)
    assert x == pytest.approx(1.0, abs=1e-9)
    assert iterations > 0


def test_damped_fixed_point_gives_up():
    with pytest.raises(NoConvergence):
        maths.damped_fixed_point(lambda x: x + 1.0, 0.0, max_iter=20)


def test_loglog_slope_and_peaks():
    x = np.linspace(10.0, 100.0, 4000)
    y = np.cos(3.0 * x) / x ** 2
    peaks_x, peaks_y = maths.envelope_peaks(x, y)
    assert len(peaks_x) > 50
    assert maths.loglog_slope(peaks_x, peaks_y) == pytest.approx(-2.0,
                                                                 abs=0.02)


def test_scan_grid_step():
    grid = maths.scan_grid(0.0, 1.0, 0.3)
    assert grid[0] == 0.0 and grid[-1] == 1.0
    assert np.max(np.diff(grid)) <= 0.3
