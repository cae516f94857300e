import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from satchoice.thresholds import (
    ALPHA3_HIGH,
    ALPHA3_LOW,
    GAMMA3,
    LoweringParams,
    choice_two_sat_alpha,
    choice_two_sat_alpha_numeric,
    gamma,
    min_choices_to_lower,
    optimal_a,
    optimal_a_closed_form,
    optimal_a_numeric,
    two_sat_threshold,
)


def test_two_sat_threshold_unbiased():
    assert two_sat_threshold(0.25, 0.5, 0.25) == pytest.approx(1.0, abs=1e-15)
    assert two_sat_threshold(0.0, 0.0, 1.0) == math.inf
    assert two_sat_threshold(0.0, 0.5, 0.5) == 2.0
    with pytest.raises(ValueError):
        two_sat_threshold(0.5, 0.5, 0.5)
    with pytest.raises(ValueError):
        two_sat_threshold(-0.1, 0.6, 0.5)


@pytest.mark.parametrize("k", range(2, 31))
@pytest.mark.parametrize("t", range(1, 9))
def test_closed_form_matches_profile_route(k, t):
    assert choice_two_sat_alpha(k, t) == pytest.approx(choice_two_sat_alpha_numeric(k, t), rel=1e-10)


def test_closed_form_values():
    assert abs(choice_two_sat_alpha(2, 1) - 1.0) < 1e-10
    assert abs(choice_two_sat_alpha(2, 2) - 1.203) < 1e-3
    assert choice_two_sat_alpha(3, 3) > 4.86
    for k in range(4, 31):
        assert choice_two_sat_alpha(k, 3) > 2**k * math.log(2)


def test_closed_form_k_t_scaling():
    # roughly 2^(kt/2) / (2 sqrt(1 - ...)) once (k+1)^t << 2^(kt/2)
    assert choice_two_sat_alpha(30, 4) > 2**58


def test_gamma_values():
    assert gamma(1.0, 3, 2) == 1.0
    for a in (0.1, 0.5, 0.9):
        assert gamma(a, 3, 2) == pytest.approx((1 - (1 - a**3) ** 2) / a, rel=1e-12)
        assert gamma(a, 4, 1) == pytest.approx(a**3, rel=1e-12)
    assert gamma(1e-6, 3, 2) > 0
    with pytest.raises(ValueError):
        gamma(0.0, 3, 2)
    p = LoweringParams(3, 2, 0.9)
    assert p.gamma == gamma(0.9, 3, 2) and p.q == pytest.approx(1 - (1 - 0.729) ** 2)


def grid_argmax(k, t, points=10_000):
    a = np.linspace(1e-4, 1.0, points)
    with np.errstate(divide="ignore"):
        g = -np.expm1(t * np.log1p(-(a**k))) / a
    i = int(np.argmax(g))
    return a[i], g[i]


@pytest.mark.parametrize("k", [2, 3, 4, 7, 12])
def test_optimal_a_grid_oracle(k):
    a_cf, g_cf = optimal_a_closed_form(k)
    a_grid, g_grid = grid_argmax(k, 2)
    assert abs(a_cf - a_grid) < 2e-4
    assert g_cf >= g_grid - 1e-12


@pytest.mark.parametrize("k", range(2, 30))
def test_optimal_a_closed_form_vs_numeric(k):
    a_cf, g_cf = optimal_a_closed_form(k)
    a_num, g_num = optimal_a_numeric(k, 2)
    assert abs(a_cf - a_num) < 1e-6
    assert abs(g_cf - g_num) < 1e-12
    assert g_cf == pytest.approx(gamma(a_cf, k, 2), rel=1e-12)


def test_gamma_max_lower_bound():
    for k in range(2, 51):
        assert optimal_a(k, 2)[1] >= 1 + 1 / (4 * k * k)


def test_min_choices():
    assert GAMMA3 == ALPHA3_HIGH / ALPHA3_LOW
    assert min_choices_to_lower(3, 4.4898 / 3.52) == 6
    for k in range(2, 8):
        assert min_choices_to_lower(k, 1.0) == 2


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 6), st.floats(1.0, 1.6))
def test_min_choices_grid_oracle(k, target):
    t = min_choices_to_lower(k, target)
    assert grid_argmax(k, t)[1] > target - 1e-6
    if t > 1:
        assert optimal_a(k, t - 1)[1] <= target


def test_optimal_a_validation():
    with pytest.raises(ValueError):
        optimal_a(1, 2)
    with pytest.raises(ValueError):
        min_choices_to_lower(3, 0.9)


def test_two_sat_threshold_mixed_only():
    for p1 in (0.25, 0.5, 1.0):
        rest = 1.0 - p1
        assert two_sat_threshold(rest, p1, 0.0) == 1.0 / p1


def test_gamma_nondecreasing_in_choices():
    for k in (2, 3, 5):
        for a in (0.2, 0.6, 0.95):
            vals = [gamma(a, k, t) for t in range(1, 10)]
            assert vals == sorted(vals)
        maxima = [optimal_a(k, t)[1] for t in range(1, 10)]
        assert all(b >= a - 1e-12 for a, b in zip(maxima, maxima[1:]))


@pytest.mark.parametrize("k", range(2, 20))
def test_closed_form_optimum_is_stationary(k):
    a, _ = optimal_a_closed_form(k)
    h = 1e-6
    assert abs((gamma(a + h, k, 2) - gamma(a - h, k, 2)) / (2 * h)) < 1e-6


def test_unbiased_threshold_grows_like_root_two_power():
    # the smallest ratio on 2 <= k <= 30 is 0.3722 at k = 5
    ratios = [choice_two_sat_alpha(k, 1) * 2 ** (-k / 2) for k in range(2, 31)]
    assert min(ratios) >= 0.37


def test_min_choices_small_target():
    assert min_choices_to_lower(3, 1.02) <= 2
