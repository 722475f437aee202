"""test_besselsum.py"""
import itertools

import numpy as np
import pytest

from classes.errors import ConvergenceError, NearPoleError
from classes.records import SumKind
from modules import besselsum
from modules import complexfn

GRID = list(itertools.product(
    np.linspace(-2.0, 2.0, 5), np.linspace(0.05, 2.0, 5), (0.5, 5.0, 25.0)))


@pytest.mark.parametrize("kind", list(SumKind))
def test_closed_forms_match_oracle_on_grid(kind):
    worst = 0.0
    for re_mu, im_mu, x in GRID:
        mu = complex(re_mu, im_mu)
        closed = besselsum.kernel(kind.shift, mu, x)
        oracle = besselsum.oracle_sum(kind, mu, x)
        worst = max(worst, abs(closed - oracle.value) / abs(oracle.value))
    assert worst <= 1e-9


@pytest.mark.parametrize("kind, mu, x", [
    (SumKind.S0, 0.7 + 0.05j, 3.0),
    (SumKind.S0, -1.6 + 0.5j, 12.0),
    (SumKind.S1, 0.25 + 0.1j, 5.0),
    (SumKind.S1, 2.2 + 1.0j, 20.0),
    (SumKind.S2, 0.5 + 0.2j, 4.0),
    (SumKind.S2, -0.9 + 0.05j, 25.0),
])
def test_documented_points(kind, mu, x):
    oracle = besselsum.oracle_sum(kind, mu, x, tol=1e-12)
    closed = besselsum.kernel(kind.shift, mu, x)
    assert abs(closed - oracle.value) <= 1e-10 * abs(oracle.value)
    assert oracle.terms_used >= int(np.ceil(x)) + besselsum.EXTRA_TERMS
    assert oracle.err_estimate <= 1e-12


def test_named_sums_are_the_kernels():
    mu, x = 0.3 + 0.4j, 2.5
    assert besselsum.sum_S0(mu, x) == besselsum.kernel(0, mu, x)
    assert besselsum.sum_S1(mu, x) == besselsum.kernel(1, mu, x)
    assert besselsum.sum_S2(mu, x) == besselsum.kernel(2, mu, x)


def test_zero_argument_limits():
    mu = 0.4 + 0.3j
    assert besselsum.sum_S0(mu, 0.0) == pytest.approx(1.0 / mu)
    assert besselsum.sum_S1(mu, 0.0) == 0j
    assert besselsum.sum_S2(mu, 0.0) == 0j
    assert abs(besselsum.sum_S0(mu, 1e-4) - 1.0 / mu) <= 1e-6


def test_small_argument_oracle():
    mu = 0.4 + 0.3j
    oracle = besselsum.oracle_sum(SumKind.S0, mu, 0.001, tol=1e-12)
    assert oracle.value == pytest.approx(1.0 / mu, rel=1e-5)


@pytest.mark.parametrize("mu", [0.7 + 0.05j, -1.3 + 0.8j])
@pytest.mark.parametrize("x", [0.5, 7.0])
def test_parity_in_x(mu, x):
    for kind, parity in ((SumKind.S0, 1), (SumKind.S1, -1), (SumKind.S2, 1)):
        positive = besselsum.oracle_sum(kind, mu, x).value
        negative = besselsum.oracle_sum(kind, mu, -x).value
        assert negative == pytest.approx(parity * positive, rel=1e-12)
        assert besselsum.kernel(kind.shift, mu, -x) == pytest.approx(
            negative, rel=1e-9)


@pytest.mark.parametrize("mu", [2.0, -1.0 + 1e-13j, 3.0 + 5e-13])
def test_near_integer_mu_rejected(mu):
    with pytest.raises(NearPoleError):
        besselsum.sum_S0(mu, 1.0)


def test_kernel_rejects_unknown_shift():
    with pytest.raises(ValueError):
        besselsum.kernel(3, 0.5 + 0.5j, 1.0)


@pytest.mark.parametrize("p, q", [(0, 0), (0, 1), (1, 0), (-1, 1), (2, 3),
                                  (0, 2)])
def test_pair_sum_matches_direct_sum(p, q):
    mu, x = 0.35 + 0.6j, 6.0

    def terms(orders, jtable):
        return jtable(p) * jtable(q) / (orders + mu)

    direct = besselsum.direct_sum(terms, x, 1e-13, (p, q), [mu])
    assert besselsum.pair_sum(p, q, mu, x) == pytest.approx(direct.value,
                                                            rel=1e-9)


def test_pair_sum_rejects_wide_gap():
    with pytest.raises(ValueError):
        besselsum.pair_sum(0, 3, 0.5 + 0.5j, 1.0)


def test_partial_fractions_reconstruct_product():
    poles = [0.3 + 0.2j, -1.1 + 0.5j, 2.4 - 0.7j]
    residues = besselsum.partial_fractions(poles)
    for n in (-3, 0, 5):
        product = np.prod([1.0 / (n + a) for a in poles])
        rebuilt = sum(res / (n + a) for res, a in zip(residues, poles))
        assert rebuilt == pytest.approx(product, rel=1e-12)


def test_partial_fractions_coinciding_poles():
    with pytest.raises(NearPoleError):
        besselsum.partial_fractions([0.5 + 0.5j, 0.5 + 0.5j])


def test_reduced_sum_matches_direct_sum():
    poles = [0.3 + 0.4j, -0.6 - 0.9j, 1.2 + 0.1j]
    x = 4.0

    def terms(orders, jtable):
        denominator = np.ones(len(orders), dtype=complex)
        for a in poles:
            denominator *= orders + a
        return jtable(0) * jtable(-1) / denominator

    direct = besselsum.direct_sum(terms, x, 1e-14, (0, -1), poles)
    reduced = besselsum.reduced_sum(0, -1, poles, x)
    assert reduced == pytest.approx(direct.value, rel=1e-9)


def test_bessel_bound_dominates():
    x = 3.5
    orders = np.arange(0, 40)
    values = np.abs(complexfn.besselj_int_range(0, 39, x))
    assert np.all(values <= besselsum.bessel_bound(orders, x) * (1 + 1e-12))


def test_tail_bound_certifies_actual_tail():
    mu, x, n_trunc = 0.5 + 0.3j, 10.0, 30
    orders = np.arange(n_trunc + 1, 200)
    jn = complexfn.besselj_int_range(n_trunc + 1, 199, x)
    # J_{-n}² = J_n², so both sides share the numerators
    tail = (np.sum(np.abs(jn * jn / (orders + mu)))
            + np.sum(np.abs(jn * jn / (-orders + mu))))
    dmin = besselsum.denominator_floor([mu], n_trunc)
    assert tail <= besselsum.tail_bound(x, n_trunc, (0, 0), dmin)


def test_denominator_floor_too_small_truncation():
    assert besselsum.denominator_floor([50.0 + 0.0j], 10) == 0.0


def test_direct_sum_gives_up():
    def terms(orders, jtable):
        return jtable(0) ** 2 / (orders + 1e6)

    # No allowed truncation gets past a real pole this far out
    with pytest.raises(ConvergenceError):
        besselsum.direct_sum(terms, 2.0, 1e-13, (0, 0), [1e6])


def test_direct_sum_rejects_bad_tolerance():
    with pytest.raises(ValueError):
        besselsum.oracle_sum(SumKind.S0, 0.5 + 0.5j, 1.0, tol=0.0)
