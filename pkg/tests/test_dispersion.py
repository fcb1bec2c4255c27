"""Dispersion function: fixed values, algebraic identities, stability."""

import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from waveguide_rate import WaveTriple, freq_ratio, freq_ratio_radial

mp.mp.dps = 40


def _naive_form_mp(x1, x2, x3):
    """The cancellation-prone textbook form, in high precision."""
    k2 = mp.mpf(x1) ** 2 + mp.mpf(x2) ** 2
    return 2 * k2 / (-mp.mpf(x3) + mp.sqrt(mp.mpf(x3) ** 2 + 4 * k2))


def test_fixed_values():
    assert freq_ratio(WaveTriple(1, 0, 0)) == pytest.approx(1.0, rel=1e-15)
    assert freq_ratio(WaveTriple(3, 4, 0)) == pytest.approx(5.0, rel=1e-15)
    assert freq_ratio(WaveTriple(2, 0, 0)) == pytest.approx(2.0, rel=1e-15)


def test_value_against_high_precision_naive_form():
    # 1 + sqrt(2): both algebraic forms agree in exact arithmetic
    expected = float(_naive_form_mp(1, 0, 2))
    assert expected == pytest.approx(1 + math.sqrt(2), rel=1e-15)
    assert freq_ratio(WaveTriple(1, 0, 2)) == pytest.approx(expected, rel=1e-14)


def test_zero_transverse_wavenumber_rejected():
    with pytest.raises(ValueError):
        freq_ratio(WaveTriple(0, 0, 1))


def test_negative_component_rejected():
    with pytest.raises(ValueError):
        WaveTriple(-1, 0, 1)


@settings(max_examples=200, deadline=None)
@given(
    x1=st.floats(0.0, 50.0),
    x2=st.floats(0.0, 50.0),
    x3=st.floats(0.0, 50.0),
    s=st.floats(1e-3, 1e3),
)
def test_homogeneity_degree_one(x1, x2, x3, s):
    if x1 == 0.0 and x2 == 0.0:
        x1 = 1.0
    f1 = freq_ratio(WaveTriple(x1 * s, x2 * s, x3 * s))
    f0 = freq_ratio(WaveTriple(x1, x2, x3))
    assert f1 == pytest.approx(s * f0, rel=1e-13)


@settings(max_examples=200, deadline=None)
@given(
    x1=st.floats(1e-6, 1e3),
    x2=st.floats(0.0, 1e3),
    x3=st.floats(0.0, 1e3),
)
def test_radial_dependence(x1, x2, x3):
    kappa = math.hypot(x1, x2)
    full = freq_ratio(WaveTriple(x1, x2, x3))
    radial = freq_ratio(WaveTriple(kappa, 0.0, x3))
    assert full == pytest.approx(radial, rel=1e-13)


@settings(max_examples=300, deadline=None)
@given(
    log_kappa=st.floats(math.log(1e-6), math.log(1e6)),
    log_x3=st.floats(math.log(1e-9), math.log(1e9)),
)
def test_agrees_with_naive_form_over_wide_range(log_kappa, log_x3):
    # The naive form loses all float precision when x3 >> kappa, so the
    # reference is evaluated in high-precision arithmetic; the rationalized
    # float evaluation must track it everywhere in the box.
    kappa = math.exp(log_kappa)
    x3 = math.exp(log_x3)
    got = float(freq_ratio_radial(kappa, x3))
    want = float(_naive_form_mp(kappa, 0.0, x3))
    assert got == pytest.approx(want, rel=1e-10)


def test_agrees_with_naive_form_in_float_where_well_conditioned():
    rng = np.random.default_rng(7)
    kappa = np.exp(rng.uniform(np.log(1e-6), np.log(1e6), size=500))
    x3 = kappa * np.exp(rng.uniform(np.log(1e-9), np.log(100.0), size=500))
    naive = 2 * kappa**2 / (-x3 + np.sqrt(x3**2 + 4 * kappa**2))
    stable = freq_ratio_radial(kappa, x3)
    assert np.allclose(stable, naive, rtol=1e-10, atol=0.0)


@settings(max_examples=200, deadline=None)
@given(
    kappa=st.floats(1e-6, 1e6),
    x3=st.floats(0.0, 1e6),
    dk=st.floats(1e-6, 10.0),
    dx=st.floats(1e-6, 10.0),
)
def test_strict_monotonicity_and_lower_bounds(kappa, x3, dk, dx):
    f = freq_ratio(WaveTriple(kappa, 0.0, x3))
    assert f >= kappa
    assert f >= x3
    assert freq_ratio(WaveTriple(kappa, 0.0, x3 + dx)) > f
    assert freq_ratio(WaveTriple(kappa + dk, 0.0, x3)) > f
