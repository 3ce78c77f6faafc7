"""Occupancy, inverse temperature, entropy, degeneracy."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from urnengine import thermo


finite_x = st.floats(min_value=-50.0, max_value=50.0, allow_nan=False)


def test_occupancy_known_values():
    assert thermo.occupancy(0.0) == 0.5
    assert thermo.occupancy(math.log(4.0)) == pytest.approx(0.2, abs=1e-15)
    assert thermo.occupancy(float("inf")) == 0.0
    assert thermo.occupancy(float("-inf")) == 1.0


def test_occupancy_extreme_arguments_do_not_overflow():
    assert thermo.occupancy(800.0) == 0.0
    assert thermo.occupancy(-800.0) == 1.0
    out = thermo.occupancy_np(np.array([800.0, -800.0, 0.0]))
    assert out[0] == 0.0 and out[1] == 1.0 and out[2] == 0.5


@given(finite_x)
@settings(max_examples=200)
def test_occupancy_complement(x):
    assert thermo.occupancy(x) + thermo.occupancy(-x) == pytest.approx(1.0, abs=1e-15)


@given(finite_x)
@settings(max_examples=100)
def test_occupancy_np_matches_scalar(x):
    # libm and numpy exp may round differently by one ulp
    assert thermo.occupancy_np(np.array([x]))[0] == pytest.approx(thermo.occupancy(x), rel=1e-15)


def test_beta_from_occupancy_oracles():
    assert thermo.beta_from_occupancy(2000, 10_000, 1.0).beta == pytest.approx(math.log(4.0), abs=1e-14)
    assert thermo.beta_from_occupancy(3000, 10_000, 2.0).beta == pytest.approx(math.log(7.0 / 3.0) / 2.0, abs=1e-14)
    # population inversion gives negative beta
    assert thermo.beta_from_occupancy(7000, 10_000, 1.0).beta == pytest.approx(-math.log(7.0 / 3.0), abs=1e-14)
    assert thermo.beta_from_occupancy(8000, 10_000, 2.0).beta == pytest.approx(-math.log(4.0) / 2.0, abs=1e-14)


def test_beta_temperature_is_reciprocal():
    b = thermo.beta_from_occupancy(2000, 10_000, 1.0)
    assert b.temperature == pytest.approx(1.0 / b.beta, rel=1e-15)
    assert float(b) == b.beta


@given(st.integers(min_value=1, max_value=9999), st.floats(min_value=0.01, max_value=50.0))
@settings(max_examples=150)
def test_beta_occupancy_round_trip(n, eps):
    beta = thermo.beta_from_occupancy(n, 10_000, eps)
    f = thermo.occupancy(beta.beta * eps)
    assert f == pytest.approx(n / 10_000, abs=1e-12)


def test_beta_rejects_degenerate_occupation():
    with pytest.raises(ValueError, match="degenerate occupancy"):
        thermo.beta_from_occupancy(0, 10, 1.0)
    with pytest.raises(ValueError, match="degenerate occupancy"):
        thermo.beta_from_occupancy(10, 10, 1.0)
    with pytest.raises(ValueError, match="invalid occupation"):
        thermo.beta_from_occupancy(11, 10, 1.0)
    with pytest.raises(ValueError, match="invalid occupation"):
        thermo.beta_from_occupancy(-1, 10, 1.0)
    with pytest.raises(ValueError, match="altitude must be positive"):
        thermo.beta_from_occupancy(5, 10, 0.0)


def test_half_occupation_is_infinite_temperature():
    b = thermo.beta_from_occupancy(5000, 10_000, 1.0)
    assert b.beta == 0.0
    with pytest.raises(ValueError, match="degenerate occupancy"):
        thermo.InverseTemperature(float("inf"))


def test_entropy_known_values():
    assert float(thermo.entropy_s(0.0)) == pytest.approx(math.log(2.0), abs=1e-15)
    # x f(x) + ln(1 + e^-x) at x = ln 4
    x = math.log(4.0)
    expected = x * 0.2 + math.log(1.25)
    assert float(thermo.entropy_s(x)) == pytest.approx(expected, abs=1e-14)


@given(finite_x)
@settings(max_examples=200)
def test_entropy_even_bounded(x):
    s = float(thermo.entropy_s(x))
    assert 0.0 <= s <= math.log(2.0) + 1e-15
    assert s == pytest.approx(float(thermo.entropy_s(-x)), abs=1e-12)


def test_entropy_two_argument_form():
    # s(x, y) = x f(y) + ln(1 + e^-x); cross form used by branch heats
    x, y = 1.5, -0.7
    expected = x * thermo.occupancy(y) + math.log(1.0 + math.exp(-x))
    assert float(thermo.entropy_s(x, y)) == pytest.approx(expected, rel=1e-14)


def test_entropy_rejects_non_finite():
    with pytest.raises(ValueError, match="finite"):
        thermo.entropy_s(float("inf"))
    with pytest.raises(ValueError, match="nonnegative"):
        thermo.EntropyValue(-0.1)


def test_entropy_equally_spaced_sup_is_log_levels():
    for levels in (2, 3, 5):
        assert thermo.entropy_equally_spaced(0.0, levels) == pytest.approx(math.log(levels), abs=1e-12)
        # approaches the sup from below as the reduced gap shrinks
        assert thermo.entropy_equally_spaced(1e-4, levels) < math.log(levels)
        assert thermo.entropy_equally_spaced(1e-4, levels) == pytest.approx(math.log(levels), abs=1e-6)


def test_entropy_equally_spaced_two_levels_matches_pair_form():
    for x in (0.3, 1.7, 4.0):
        assert thermo.entropy_equally_spaced(x, 2) == pytest.approx(float(thermo.entropy_s(x)), rel=1e-12)


def test_entropy_equally_spaced_validation():
    with pytest.raises(ValueError, match="levels"):
        thermo.entropy_equally_spaced(1.0, 1)
    with pytest.raises(ValueError, match="finite"):
        thermo.entropy_equally_spaced(float("nan"), 3)


def test_log_degeneracy_small_exact():
    assert thermo.log_degeneracy(3, 1) == math.log(3.0)
    assert thermo.log_degeneracy(10, 0) == 0.0
    assert thermo.log_degeneracy(10, 10) == 0.0
    assert thermo.log_degeneracy(5, 2) == pytest.approx(math.log(10.0), rel=1e-15)


def test_log_degeneracy_large_uses_stirling_branch():
    n_total, n = 10**6, 200_000
    got = thermo.log_degeneracy(n_total, n)
    expected = math.lgamma(n_total + 1) - math.lgamma(n + 1) - math.lgamma(n_total - n + 1)
    assert got == pytest.approx(expected, rel=1e-12)


def test_log_degeneracy_validation():
    with pytest.raises(ValueError, match="invalid occupation"):
        thermo.log_degeneracy(10, 11)
    with pytest.raises(ValueError, match="invalid occupation"):
        thermo.log_degeneracy(10, -1)


def test_carnot_efficiency_values():
    assert thermo.carnot_efficiency(1.38, 0.42) == pytest.approx(1.0 - 0.42 / 1.38, rel=1e-15)
    # mixed-sign temperatures clamp at unity
    assert thermo.carnot_efficiency(0.2007, -0.1003) == 1.0
    with pytest.raises(ValueError, match="infinite cold temperature"):
        thermo.carnot_efficiency(0.0, 0.42)


@given(
    st.floats(min_value=0.01, max_value=10.0),
    st.floats(min_value=0.01, max_value=10.0),
    st.floats(min_value=0.1, max_value=10.0),
)
@settings(max_examples=100)
def test_carnot_efficiency_scale_invariant(bl, bh, a):
    assert thermo.carnot_efficiency(a * bl, a * bh) == pytest.approx(
        thermo.carnot_efficiency(bl, bh), abs=1e-12
    )


def test_carnot_accepts_inverse_temperature_objects():
    bl = thermo.beta_from_occupancy(2000, 10_000, 1.0)
    bh = thermo.beta_from_occupancy(3000, 10_000, 2.0)
    assert thermo.carnot_efficiency(bl, bh) == pytest.approx(1.0 - bh.beta / bl.beta, rel=1e-14)
