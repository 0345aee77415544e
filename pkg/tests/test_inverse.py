import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from deformed_md.exceptions import BracketError, InvalidParams, NoConvergence
from deformed_md.inverse import (
    InversionSettings,
    build_lookup,
    deformed_exp,
    exp_series,
    invert_monotone,
    invert_with_stats,
    lookup_invert,
)
from deformed_md.linkfn import (
    HTG,
    KLS,
    Kaniadakis,
    Natural,
    Tsallis,
    default_family,
    exp_closed,
    log_eval,
    tempesta_series_coeffs,
)

import _oracles as orc
from _sampling import TAGS, inverse_error_floor, mild_tempesta, random_family


def test_invert_examples():
    assert invert_monotone(Natural(), 0.0) == pytest.approx(1.0, abs=1e-15)
    ref = float(orc.inverse(lambda x: orc.tsallis_log(0.5, x), 2, x0=3))
    assert invert_monotone(Tsallis(0.5), 2.0) == pytest.approx(ref, rel=1e-10)
    assert invert_monotone(Tsallis(0.5), 2.0) == pytest.approx(exp_closed(Tsallis(0.5), 2.0), rel=1e-10)
    fam = KLS(0.5, 0.25)
    assert invert_monotone(fam, log_eval(fam, 3.0)) == pytest.approx(3.0, rel=1e-12)


@pytest.mark.parametrize("tag", TAGS)
def test_exp_of_zero_is_one(tag):
    assert invert_monotone(default_family(tag), 0.0) == pytest.approx(1.0, abs=1e-14)


def test_vectorized_shape():
    y = np.linspace(-2, 2, 12).reshape(3, 4)
    x = invert_monotone(Kaniadakis(0.4), y)
    assert x.shape == (3, 4)
    np.testing.assert_allclose(log_eval(Kaniadakis(0.4), x), y, atol=1e-13)


def test_bracket_error_outside_range():
    # Tsallis q = 2 has log < 1
    with pytest.raises(BracketError):
        invert_monotone(Tsallis(2.0), 1.5)
    with pytest.raises(BracketError):
        invert_monotone(Natural(), float("nan"))


def test_no_convergence_when_budget_too_small():
    with pytest.raises(NoConvergence):
        invert_monotone(Kaniadakis(0.4), 50.0, InversionSettings(max_iters=2))


def test_settings_validation():
    with pytest.raises(InvalidParams):
        InversionSettings(bracket_lo=2.0, bracket_hi=1.0)
    with pytest.raises(InvalidParams):
        InversionSettings(rel_tol=0.0)
    with pytest.raises(InvalidParams):
        InversionSettings(max_iters=0)


def test_residual_tolerance_met():
    fam = default_family("tempesta")
    s = InversionSettings()
    y = np.linspace(-3, 3, 31)
    x = invert_monotone(fam, y, s)
    assert np.all(np.abs(log_eval(fam, x) - y) <= s.abs_tol + s.rel_tol * np.abs(y) + 1e-15)


def test_warm_start_agrees():
    fam = default_family("euler")
    y = np.linspace(-1, 1, 9)
    cold = invert_monotone(fam, y)
    warm, iters = invert_with_stats(fam, y, x0=cold * 1.01)
    np.testing.assert_allclose(warm, cold, rtol=1e-13)
    assert iters < 20


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), tag=st.sampled_from(TAGS))
def test_round_trip(seed, tag):
    rng = np.random.default_rng(seed)
    fam = random_family(tag, rng)
    x = np.exp(rng.uniform(np.log(1e-4), np.log(1e4), 25))
    x = x[inverse_error_floor(fam, x) <= 1e-10]
    back = invert_monotone(fam, log_eval(fam, x))
    assert np.all(np.abs(back - x) <= 1e-8 * x)


@pytest.mark.parametrize("tag", TAGS)
def test_deformed_exp_numeric_matches_closed(tag):
    fam = default_family(tag)
    y = log_eval(fam, np.logspace(-3, 3, 21))
    np.testing.assert_allclose(
        deformed_exp(fam, y, closed_form=False), deformed_exp(fam, y), rtol=1e-10
    )


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), tag=st.sampled_from(TAGS))
def test_exponential_increasing_and_convex(seed, tag):
    fam = random_family(tag, np.random.default_rng(seed))
    lo, hi = log_eval(fam, 0.1), log_eval(fam, 10.0)
    y = np.linspace(lo, hi, 60)
    x = invert_monotone(fam, y)
    d1 = np.diff(x)
    d2 = np.diff(x, 2)
    assert np.all(d1 > 0)
    assert np.all(d2 > -1e-12 * np.max(x))


# ---- series --------------------------------------------------------------------

def test_exp_series_examples():
    assert exp_series(0.0, 0.0, 0.1) == pytest.approx(1 + 0.1 + 0.005 + 0.1**3 / 6, abs=1e-15)
    assert exp_series(0.3, -1.2, 0.0) == 1.0
    diff = abs(exp_series(0.5, 0.25, 0.2) - exp_closed(Tsallis(0.5), 0.2))
    assert diff <= 5 * 0.2**4
    assert exp_series(0.5, 0.25, 0.2, order=2) == pytest.approx(1 + 0.2 + 0.25 * 0.04)


def test_exp_series_cubic_coefficient_against_tsallis():
    # exp_q(y) = (1 + d y)^(1/d), d = 1 - q; cubic coefficient (1 - d)(1 - 2d)/6
    for q in (0.3, 0.8, 1.6):
        d = 1 - q
        y = 1e-3
        expected = 1 + y + (1 - d) * y**2 / 2 + (1 - d) * (1 - 2 * d) * y**3 / 6
        assert exp_series(d, d * d, y) == pytest.approx(expected, rel=1e-15)


@pytest.mark.parametrize("seed", range(10))
def test_exp_series_error_is_fourth_order(seed):
    fam = mild_tempesta(np.random.default_rng(seed))
    a1, a2 = tempesta_series_coeffs(fam.phi, fam.alpha, fam.sigma)
    err = {y: abs(exp_series(a1, a2, y) - invert_monotone(fam, y)) for y in (0.4, 0.2, 0.1, 0.05)}
    for y in (0.4, 0.2, 0.1):
        assert err[y / 2] <= 0.08 * err[y]


# ---- lookup tables ----------------------------------------------------------------

def test_lookup_examples():
    table = build_lookup(Natural(), 1024)
    assert lookup_invert(table, 1.0) == pytest.approx(math.e, rel=1e-8)
    fam = Kaniadakis(0.3)
    table = build_lookup(fam, 1024)
    assert lookup_invert(table, log_eval(fam, 2.5)) == pytest.approx(2.5, rel=1e-8)
    table = build_lookup(Tsallis(2.0), 1024)
    with pytest.raises(BracketError):
        lookup_invert(table, table.y_range[1] + 1e-3)


def test_lookup_grid_size_validation():
    with pytest.raises(InvalidParams):
        build_lookup(Natural(), 1)


def test_lookup_table_is_read_only():
    table = build_lookup(Natural(), 16)
    with pytest.raises(ValueError):
        table.xs[0] = 1.0


@pytest.mark.parametrize("tag", TAGS)
def test_lookup_agrees_with_root_finding(tag):
    fam = default_family(tag)
    table = build_lookup(fam, 1024)
    lo, hi = table.y_range
    y = np.linspace(lo, hi, 203)[1:-1]
    np.testing.assert_allclose(lookup_invert(table, y), invert_monotone(fam, y), rtol=1e-8)


# ---- integral identity -------------------------------------------------------------

@pytest.mark.parametrize(
    "fam,y_min",
    [
        (Tsallis(1.3), -np.inf),
        (Tsallis(1.7), -np.inf),
        (Kaniadakis(0.5), -np.inf),
        (Kaniadakis(-0.3), -np.inf),
        (HTG(0.3, -0.2), -1 / 0.3),
    ],
)
def test_integral_identity(fam, y_min):
    # the area under exp on (-inf, 0] equals minus the area under log on (0, 1]
    exp_side, _ = quad(lambda y: invert_monotone(fam, y), y_min, 0.0, epsabs=0, epsrel=1e-9, limit=200)
    log_side, _ = quad(lambda x: log_eval(fam, x), 0.0, 1.0, epsabs=0, epsrel=1e-9, limit=200)
    assert exp_side > 0
    assert -log_side > 0
    assert exp_side == pytest.approx(-log_side, rel=1e-4)


def test_integral_identity_natural_values():
    exp_side, _ = quad(lambda y: deformed_exp(Natural(), y), -np.inf, 0.0)
    log_side, _ = quad(lambda x: log_eval(Natural(), x), 0.0, 1.0)
    assert exp_side == pytest.approx(1.0, rel=1e-8)
    assert log_side == pytest.approx(-1.0, rel=1e-8)
