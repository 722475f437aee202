"""test_attractor.py"""
import dataclasses
import itertools
import math

import numpy as np
import pytest
from scipy import special

from classes.errors import NumericalError
from classes.params import AttractorParams
from modules import attractor
from modules import maths


def make_params(kappa=1.0, r=0.3, A=2.0, **extra):
    """G = Ω_m = |α_max|² = 1 and x̄ = 0, so Δ = r and X = −A."""
    return AttractorParams(kappa=kappa, Delta=r, A=A, **extra)


def scipy_coefficients(p: AttractorParams):
    n_max = int(math.ceil(abs(p.X))) + 60
    orders = np.arange(-n_max, n_max + 2)
    jn = special.jv(orders, p.X)
    return orders, p.alpha_max * p.c * jn / (p.c + 1j * (orders - p.r))


def scipy_photons(p):
    _, alpha = scipy_coefficients(p)
    return math.fsum(np.abs(alpha) ** 2)


def scipy_power(p):
    _, alpha = scipy_coefficients(p)
    overlap = np.conj(alpha[:-1]) * alpha[1:]
    return p.A * p.Omega_m * math.fsum(overlap.imag)


def test_alpha_n_without_motion():
    p = make_params(kappa=1.0, r=0.4, A=0.0)
    expected = (p.alpha_max / 2.0) / (0.5 - 1j * p.r / (2.0 * p.c))
    assert attractor.alpha_n(0, p) == pytest.approx(expected, rel=1e-14)
    assert attractor.alpha_n(1, p) == 0j


def test_alpha_n_matches_scipy():
    p = make_params(kappa=1.0, r=0.3, A=2.0)
    orders, alpha = scipy_coefficients(p)
    index = int(np.nonzero(orders == 1)[0][0])
    assert attractor.alpha_n(1, p) == pytest.approx(alpha[index], rel=1e-12)


GRID = list(itertools.product((0.1, 1.0, 5.0), (-1.3, 0.0, 0.7),
                              (0.5, 5.0, 25.0)))


@pytest.mark.parametrize("kappa, r, A", GRID)
def test_force_matches_direct_sum(kappa, r, A):
    p = make_params(kappa=kappa, r=r, A=A)
    assert attractor.force_avg(p) == pytest.approx(scipy_photons(p),
                                                   rel=1e-9)


@pytest.mark.parametrize("kappa, r, A", GRID)
def test_power_matches_direct_sum(kappa, r, A):
    p = make_params(kappa=kappa, r=r, A=A)
    direct = scipy_power(p)
    if r == 0.0:
        # The power is odd in r
        assert abs(attractor.power_input(p)) <= 1e-12
        assert abs(direct) <= 1e-12
        return
    assert attractor.power_input(p) == pytest.approx(direct, rel=1e-9)


def test_force_scales_with_G():
    p = make_params(kappa=1.0, r=0.3, A=2.0)
    doubled = dataclasses.replace(p, G=2.0, A=1.0, Delta=0.3)
    # Same X and r, twice the pull
    assert attractor.force_avg(doubled) == pytest.approx(
        2.0 * attractor.force_avg(p), rel=1e-12)


def test_force_without_motion_is_single_lorentzian():
    p = make_params(kappa=1.0, r=0.5, A=0.0)
    expected = p.G * p.alpha_max_sq * p.c ** 2 / (p.c ** 2 + p.r ** 2)
    assert attractor.force_avg(p) == pytest.approx(expected, rel=1e-13)


def test_power_vanishes_without_motion_or_drive():
    assert attractor.power_input(make_params(A=0.0)) == 0.0
    assert attractor.power_input(make_params(alpha_max_sq=0.0)) == 0.0


def test_power_is_quadratic_at_small_amplitude():
    amplitudes = np.geomspace(1e-3, 1e-2, 6)
    powers = [attractor.power_input(make_params(kappa=1.0, r=0.4, A=A))
              for A in amplitudes]
    assert maths.loglog_slope(amplitudes, powers) == pytest.approx(2.0,
                                                                   abs=0.05)


@pytest.mark.parametrize("r", [-0.8, -0.2, 0.2, 0.8])
def test_small_amplitude_power_sign(r):
    p = make_params(kappa=1.0, r=r, A=5e-3)
    assert math.copysign(1.0, attractor.power_input(p)) == math.copysign(
        1.0, r)


def test_small_amplitude_power_leading_term():
    p = make_params(kappa=0.8, r=0.6, A=1e-3)
    assert attractor.power_input_small_amplitude(p) == pytest.approx(
        attractor.power_input(p), rel=1e-4)


def test_small_amp_ratio_matches_power():
    p = make_params(kappa=1.4, r=0.5, A=1e-3)
    ratio = attractor.power_input(p) / (math.pi * p.A ** 2 * p.Omega_m)
    assert attractor.small_amp_ratio(p.r, p.c, p.coupling) == pytest.approx(
        ratio, rel=1e-3)


def test_small_amp_ratio_values():
    c = 1.0 / math.sqrt(2.0)
    assert attractor.small_amp_ratio(c, c, 1.0) == pytest.approx(
        1.0 / (4.0 * math.pi), rel=1e-12)
    assert attractor.small_amp_ratio(0.0, 0.3, 1.0) == 0.0

    c = 0.05
    r = -math.sqrt(1.0 - 2.0 * c * c)
    assert attractor.small_amp_ratio(r, c, 1.0) == pytest.approx(
        -c / (2.0 * math.pi), rel=1e-2)

    with pytest.raises(ValueError):
        attractor.small_amp_ratio(0.3, 0.0, 1.0)


def test_stability_extrema_at_optimal_linewidth():
    c = 1.0 / math.sqrt(2.0)
    [(c_out, r_max, f_max)] = attractor.stability_extrema_scan(2.0, [c])
    assert c_out == c
    assert r_max == pytest.approx(c, abs=1e-5)
    assert f_max == pytest.approx(2.0 / (4.0 * math.pi), rel=1e-6)


def test_stability_extrema_small_linewidth():
    c = 0.05
    [(_, r_max, _)] = attractor.stability_extrema_scan(1.0, [c])
    assert r_max ** 2 == pytest.approx(1.0 - 2.0 * c * c, abs=1e-3)


def test_stability_extrema_large_linewidth():
    c = 10.0
    [(_, r_max, f_max)] = attractor.stability_extrema_scan(1.0, [c])
    # For c >> 1, f ~ r/(r² + c²)³ peaks at r = c/√5
    assert r_max == pytest.approx(c / math.sqrt(5.0), rel=0.1)
    expected = 125.0 * math.sqrt(5.0) / 540.0 / (math.pi * c * c)
    assert f_max == pytest.approx(expected, rel=0.1)


def test_stability_extrema_shape():
    rising = attractor.stability_extrema_scan(1.0, [0.05, 0.3, 0.7071])
    assert rising[0][2] < rising[1][2] < rising[2][2]

    large_c = [5.0, 7.0, 10.0, 14.0, 20.0]
    tail = attractor.stability_extrema_scan(1.0, large_c)
    slope = maths.loglog_slope(large_c, [f for _, _, f in tail])
    assert slope == pytest.approx(-2.0, abs=0.2)


def test_stability_extrema_rejects_nonpositive_c():
    with pytest.raises(ValueError):
        attractor.stability_extrema_scan(1.0, [0.5, 0.0])


def test_force_asymptotic_branch():
    p = make_params(kappa=0.2, r=0.3, A=25.0)
    assert attractor.force_avg_asymptotic(p) == pytest.approx(
        attractor.force_avg(p), rel=5e-2)


def test_force_asymptotic_oscillation_sign():
    # sin(2|X|) = 1, where the sign of the oscillating term matters most
    p = make_params(kappa=0.2, r=0.3, A=8.0 * math.pi + math.pi / 4.0)
    exact = attractor.force_avg(p)
    assert attractor.force_avg_asymptotic(p) == pytest.approx(exact,
                                                              rel=5e-2)

    b = math.sinh(math.pi * p.c) / (math.cosh(2.0 * math.pi * p.c)
                                    - math.cos(2.0 * math.pi * p.r))
    flipped = (p.kappa / p.A) * b * (math.cosh(math.pi * p.c)
                                     - math.cos(math.pi * p.r))
    assert abs(flipped - exact) > 0.3 * abs(exact)


def test_power_asymptotic_branch():
    # cos(2X) = 1 here, away from the zeros of the oscillating factor
    p = make_params(kappa=1.0, r=0.3, A=13.0 * math.pi)
    assert attractor.power_input_asymptotic(p) == pytest.approx(
        attractor.power_input(p), rel=5e-2)


@pytest.mark.parametrize("r, c, regime", [
    (0.25, 3.0, "resolved"),
    (0.25, 0.03, "unresolved"),
    (0.5, 3.0, "resolved"),
    (0.5, 0.05, "unresolved"),
])
def test_sideband_limits(r, c, regime):
    p = make_params(kappa=2.0 * c, r=r, A=math.pi)
    scale = p.kappa ** 2 * p.alpha_max_sq / (4.0 * p.G) * math.cos(2.0 * p.X)
    coefficient = attractor.power_input_asymptotic(p) / scale
    assert coefficient == pytest.approx(
        attractor.sideband_limit(r, c, regime), rel=5e-2)


def test_sideband_limit_rejects_other_detunings():
    with pytest.raises(ValueError):
        attractor.sideband_limit(0.3, 1.0, "resolved")
    with pytest.raises(ValueError):
        attractor.sideband_limit(0.25, 1.0, "bad")


def test_power_asymptotic_vanishes_at_integer_r():
    p = make_params(kappa=1.0, r=1.0, A=30.0)
    assert attractor.power_input_asymptotic(p) == pytest.approx(0.0,
                                                                abs=1e-12)


def test_solve_xbar_without_drive():
    p = make_params(alpha_max_sq=0.0)
    assert attractor.solve_xbar(p, 2.0) == 0.0


def test_solve_xbar_weak_drive():
    p = make_params(kappa=1.0, r=0.3, A=0.0, alpha_max_sq=1e-3, mass=10.0)
    lorentzian = p.G * p.alpha_max_sq * p.c ** 2 / (p.c ** 2 + p.r ** 2)
    expected = lorentzian / (p.mass * p.Omega_m ** 2)
    assert attractor.solve_xbar(p, 0.0) == pytest.approx(expected, rel=1e-3)


def test_solve_xbar_balances_force():
    p = make_params(kappa=1.0, r=1.0, A=2.0, alpha_max_sq=0.5)
    xbar = attractor.solve_xbar(p, 2.0)
    solved = dataclasses.replace(p, xbar=xbar)
    assert abs(attractor.balance_residual(solved)) <= 1e-10


def test_enumerate_xbar_contains_continued_branch():
    p = make_params(kappa=1.0, r=1.0, A=2.0, alpha_max_sq=0.5)
    roots = attractor.enumerate_xbar(p, 2.0, (-2.0, 2.0))
    assert roots == sorted(roots)
    for root in roots:
        residual = attractor.balance_residual(dataclasses.replace(p, xbar=root))
        assert abs(residual) <= 1e-8
    xbar = attractor.solve_xbar(p, 2.0)
    assert min(abs(root - xbar) for root in roots) <= 1e-8


def test_enumerate_xbar_rejects_empty_window():
    with pytest.raises(ValueError):
        attractor.enumerate_xbar(make_params(), 1.0, (1.0, 1.0))


def test_friction_power():
    p = make_params(Gamma_M=0.2, Omega_m=2.0)
    assert attractor.friction_power(p, 3.0) == pytest.approx(0.2 * 9.0 * 2.0)


def test_sweep_single_cell_ratio():
    p = make_params(kappa=1.0, r=0.5, A=1.0, Gamma_M=0.01)
    [record] = attractor.attractor_sweep([1.0], [0.5], p)
    power = attractor.power_input(p)
    assert record.ok
    assert record.ratio == pytest.approx(power / (0.01 * 1.0 / 2.0),
                                         rel=1e-12)
    assert record.power == pytest.approx(power, rel=1e-12)
    assert record.force == pytest.approx(attractor.force_avg(p), rel=1e-12)


def test_sweep_rows_are_amplitude_major():
    p = make_params(Gamma_M=0.01)
    records = attractor.attractor_sweep([1.0, 2.0], [0.1, 0.2], p)
    assert [(rec.A, rec.Delta) for rec in records] == [
        (1.0, 0.1), (1.0, 0.2), (2.0, 0.1), (2.0, 0.2)]


def test_sweep_heavy_friction_and_no_friction():
    heavy = attractor.attractor_sweep([1.0, 3.0], [0.4],
                                      make_params(Gamma_M=1e12))
    assert all(abs(rec.ratio) < 1e-9 for rec in heavy)

    free = attractor.attractor_sweep([1.0], [0.4], make_params(Gamma_M=0.0))
    assert math.isnan(free[0].ratio)


def test_sweep_self_consistent_uses_solved_xbar():
    p = make_params(kappa=1.0, alpha_max_sq=0.5, Gamma_M=0.01)
    [record] = attractor.attractor_sweep([2.0], [1.0], p,
                                         self_consistent=True)
    cell = dataclasses.replace(p, A=2.0, Delta=1.0)
    assert record.xbar_solved == pytest.approx(
        attractor.solve_xbar(cell, 2.0), rel=1e-12)


def test_sweep_rows_carry_the_ok_flag(monkeypatch):
    exact_force = attractor.force_avg

    def failing_force(cell):
        if cell.A == 3.0:
            raise NumericalError("forced failure")
        return exact_force(cell)

    monkeypatch.setattr(attractor, "force_avg", failing_force)
    good, bad = attractor.attractor_sweep([1.0, 3.0], [0.4],
                                          make_params(Gamma_M=0.0))
    # No friction: NaN ratio, but a valid cell
    assert math.isnan(good.ratio)
    assert good.row()[-1] is True
    assert bad.row()[-1] is False
    assert all(math.isnan(value) for value in bad.row()[2:6])
