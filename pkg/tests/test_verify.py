"""test_verify.py"""
import json
import math

import numpy as np
import pytest
from scipy import special

from classes.errors import ConfigError
from classes.params import AttractorParams, CycleParams, TrajectoryConfig
from classes.records import SumKind
from modules import attractor
from modules import besselsum
from modules import config
from modules import verify


def test_standard_suite_passes():
    reports = verify.run_validation_suite("standard")
    grid = verify.load_grid("standard")
    expected = (len(grid["kernels"]) + len(grid["series"])
                + len(grid["ode"]))
    assert len(reports) == expected
    failed = [(report.point_id, report.rel_err) for report in reports
              if not report.passed]
    assert failed == []


def test_suite_is_deterministic():
    first = [report.row() for report in verify.run_validation_suite(
        "standard")]
    second = [report.row() for report in verify.run_validation_suite(
        "standard")]
    assert first == second


def test_suite_keeps_grid_order():
    reports = verify.run_validation_suite("standard")
    grid = verify.load_grid("standard")
    ids = [entry["id"] for section in ("kernels", "series", "ode")
           for entry in grid[section]]
    assert [report.point_id for report in reports] == ids


def test_suite_accepts_a_dict():
    grid = {
        "schema": 1,
        "series": [{"id": "drift-b", "quantity": "drift", "at": 1.5,
                    "params": {"kappa": 0.3, "Delta": 0.4}}],
    }
    (report,) = verify.run_validation_suite(grid)
    assert report.quantity == "drift"
    assert report.passed


def test_tight_tolerance_reported_not_raised():
    grid = {
        "schema": 1,
        "ode": [{"id": "coarse", "quantity": "cavity_photon_number",
                 "tol": 1e-15,
                 "params": {"kappa": 1.0, "Delta": 0.3, "A": 2.0}}],
    }
    config.set_overrides({("TRAJECTORY", "STEPS PER PERIOD"): "256"})
    (report,) = verify.run_validation_suite(grid)
    assert not report.passed
    assert report.terms_or_steps > 0


def test_failing_point_is_reported():
    # Pole at an integer of the kernel argument
    grid = {"schema": 1,
            "kernels": [{"id": "pole", "kind": "S0", "mu": [2.0, 0.0],
                         "x": 1.0}]}
    (report,) = verify.run_validation_suite(grid)
    assert not report.passed
    assert math.isinf(report.rel_err)


def test_kernel_reports_carry_imaginary_parts():
    grid = {"schema": 1,
            "kernels": [{"id": "complex", "kind": "S1", "mu": [0.3, 0.5],
                         "x": 4.0}]}
    (report,) = verify.run_validation_suite(grid)
    closed = besselsum.kernel(SumKind.S1.shift, complex(0.3, 0.5), 4.0)
    assert report.passed
    assert report.closed_form == closed.real
    assert report.closed_imag == closed.imag
    assert closed.imag != 0.0
    assert report.oracle_imag == pytest.approx(closed.imag, rel=1e-9)
    assert len(report.row()) == 8


def test_real_quantities_leave_imaginary_columns_at_zero():
    grid = {"schema": 1,
            "series": [{"id": "drift-b", "quantity": "drift", "at": 1.5,
                        "params": {"kappa": 0.3, "Delta": 0.4}}]}
    (report,) = verify.run_validation_suite(grid)
    assert report.row()[-2:] == [0.0, 0.0]


def test_grid_from_path(tmp_path):
    path = tmp_path / "grid.json"
    path.write_text(json.dumps({
        "schema": 1,
        "kernels": [{"id": "k", "kind": "S1", "mu": [0.25, 0.1], "x": 5.0}],
    }), encoding="utf-8")
    (report,) = verify.run_validation_suite(str(path))
    assert report.point_id == "k"
    assert report.passed


def test_grid_rejects_other_schema():
    with pytest.raises(ConfigError):
        verify.load_grid({"schema": 2, "kernels": []})


def test_missing_grid():
    with pytest.raises(ConfigError):
        verify.load_grid("no-such-grid")


def test_unknown_quantity():
    with pytest.raises(ValueError):
        verify.direct_series("entropy", AttractorParams(), 1.0)
    with pytest.raises(ValueError):
        verify.closed_form("entropy", AttractorParams(), 1.0)


def test_direct_series_rejects_negative_amplitude():
    with pytest.raises(ValueError):
        verify.direct_series("drift", CycleParams(), -1.0)


def test_direct_series_reports_truncation():
    p = AttractorParams(kappa=1.0, Delta=0.3)
    result = verify.direct_series("force", p, 20.0)
    assert result.terms_used >= 20
    assert result.err_estimate <= 1e-13


@pytest.mark.parametrize("quantity", verify.CYCLE_QUANTITIES)
def test_cycle_closed_forms_match_series(quantity):
    values = {"kappa": 0.4, "Delta": 0.35, "gamma": 0.01, "nbar": 1.0}
    if quantity in ("diffusion", "wigner_general"):
        values["Delta_tilde_eff"] = 0.6
    if quantity == "delta_eff_rhs":
        values["Delta_eff"] = 0.5
    p = CycleParams(**values)
    for r in (0.0, 1.0, 6.0):
        closed = verify.closed_form(quantity, p, r)
        series = verify.direct_series(quantity, p, r)
        assert closed == pytest.approx(series.value, rel=1e-9, abs=1e-13)


@pytest.mark.parametrize("kappa, Delta, A", [
    (1.0, 0.3, 2.0),
    (0.5, -0.4, 1.0),
    (2.0, 1.0, 3.0),
    (1.0, 0.0, 0.5),
])
def test_integration_matches_closed_forms(kappa, Delta, A):
    p = AttractorParams(kappa=kappa, Delta=Delta, A=A)
    photons, power = verify.integrate_cavity(p)
    assert photons == pytest.approx(attractor.photon_number(p), rel=1e-3)
    assert power == pytest.approx(attractor.power_input(p), rel=1e-3,
                                  abs=1e-6)


def test_fourier_coefficients_match_sidebands():
    p = AttractorParams(kappa=1.0, Delta=0.3, A=2.0)
    coefficients = verify.fourier_coefficients(p, n_max=4)
    assert sorted(coefficients) == list(range(-4, 5))
    scale = max(abs(attractor.alpha_n(n, p)) for n in coefficients)
    for n, value in coefficients.items():
        assert abs(value - attractor.alpha_n(n, p)) <= 1e-3 * scale


def test_trajectory_config_reads_the_config_file():
    config.config_set("TRAJECTORY", "STEPS PER PERIOD", "300")
    cfg = verify.trajectory_config(AttractorParams(kappa=0.25))
    assert cfg.steps_per_period == 300
    assert cfg.periods_average == 20
    assert cfg.periods_transient >= 160


def test_integration_error_falls_with_fourth_power_of_step():
    p = AttractorParams(kappa=1.0, Delta=0.3, A=2.0)
    exact = attractor.photon_number(p)
    errors = []
    for steps in (256, 512):
        cfg = TrajectoryConfig.for_params(p, steps_per_period=steps)
        photons, _ = verify.integrate_cavity(p, cfg)
        errors.append(abs(photons - exact))
    assert errors[1] < errors[0]
    assert errors[0] / errors[1] >= 8.0


def test_direct_series_truncation_is_certified():
    p = AttractorParams(kappa=1.0, Delta=0.3, A=20.0)
    result = verify.direct_series("force", p, p.A)
    # Twice as many orders, straight from scipy
    orders = np.arange(-2 * result.terms_used, 2 * result.terms_used + 1)
    c, r = p.c, p.r
    photons = np.sum(p.alpha_max_sq * c * c * special.jv(orders, p.X) ** 2
                     / (c * c + (orders - r) ** 2))
    assert abs(p.G * photons - result.value) <= 1e-13 + 1e-14 * abs(
        result.value)
