import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nhc.generators import HolmeKimParams, holme_kim
from nhc.hubs import HubPolicy, HubPolicyError, PowerLawFit, dmin_from_fraction, estimate_gamma, is_hub


def test_fixed_threshold_boundary():
    pol = HubPolicy.fixed(13)
    assert is_hub(13, pol)
    assert not is_hub(12, pol)


def test_karate_hubs(karate):
    pol = HubPolicy.fixed(13)
    assert {u for u in karate if is_hub(karate.degree(u), pol)} == {1, 34}


@pytest.mark.parametrize("d_min", [4, 12, 16])
def test_table1_min_degrees_are_valid_policies(d_min):
    assert HubPolicy(min_degree=d_min).threshold() == d_min


def test_policy_needs_exactly_one_mode():
    with pytest.raises(HubPolicyError):
        HubPolicy()
    with pytest.raises(HubPolicyError):
        HubPolicy(min_degree=3, top_n=2)
    with pytest.raises(HubPolicyError):
        HubPolicy(fraction=0.0)
    with pytest.raises(HubPolicyError):
        HubPolicy(min_degree=0)


def test_top_n_includes_ties():
    degs = [9, 7, 7, 7, 3, 1]
    pol = HubPolicy(top_n=2)
    assert pol.threshold(degs) == 7
    assert sum(is_hub(d, pol, degs) for d in degs) == 4


def test_top_n_needs_context():
    with pytest.raises(HubPolicyError):
        is_hub(3, HubPolicy(top_n=2))


def test_gamma_degenerate_tail():
    with pytest.raises(HubPolicyError, match="degenerate"):
        estimate_gamma([5, 5, 5, 5], 5)
    with pytest.raises(HubPolicyError):
        estimate_gamma([1, 2, 3], 10)


def _sample_powerlaw(gamma, k_min, n, seed):
    # inverse CDF of the continuous law, rounded to the nearest integer
    u = np.random.default_rng(seed).random(n)
    return np.floor((k_min - 0.5) * (1 - u) ** (-1 / (gamma - 1)) + 0.5).astype(int)


def test_gamma_recovers_synthetic_exponent():
    fit = estimate_gamma(list(_sample_powerlaw(2.5, 5, 100_000, seed=0)), 5)
    assert 2.4 <= fit.gamma <= 2.6
    assert fit.sample_size == 100_000


def test_gamma_on_holme_kim():
    g = holme_kim(HolmeKimParams(1000, 10, 0.7, seed=0))
    fit = estimate_gamma(list(g.degrees().values()), 10)
    assert 2.0 <= fit.gamma <= 3.5


def test_gamma_warns_outside_usual_range():
    with pytest.warns(UserWarning):
        estimate_gamma(list(_sample_powerlaw(4.0, 2, 5000, seed=1)), 2)


def test_dmin_extremes():
    degs = [3, 4, 4, 5, 9, 12, 40]
    assert dmin_from_fraction(degs, 1.0) == 3
    assert dmin_from_fraction(degs, 1e-9) == 40


def test_dmin_empirical_ccdf_matches_enumeration():
    rng = np.random.default_rng(2)
    degs = list(_sample_powerlaw(2.3, 1, 3000, seed=4))
    n = len(degs)
    for h in (0.5, 0.2, 0.1, 0.05, 0.01, 0.001):
        # brute force: the largest integer x with #{deg >= x} / n >= h
        best = max(x for x in range(1, max(degs) + 1) if sum(d >= x for d in degs) / n >= h)
        assert dmin_from_fraction(degs, h) == best


def test_dmin_fitted_pmf_matches_direct_summation():
    n = 10_000
    fit = PowerLawFit(gamma=2.5, k_min=1, sample_size=n)
    degs = [1] * n  # only the length matters for the fitted variant
    z = math.fsum(k ** -2.5 for k in range(1, n + 1))
    mass = lambda x: math.fsum(k ** -2.5 for k in range(x, n + 1)) / z  # noqa: E731
    expected = max(x for x in range(1, 200) if mass(x) >= 0.01)
    assert dmin_from_fraction(degs, 0.01, fit) == expected
    assert mass(expected) >= 0.01 > mass(expected + 1)


def test_fraction_policy_resolves_threshold():
    g = holme_kim(HolmeKimParams(1000, 10, 0.7, seed=0))
    degs = list(g.degrees().values())
    pol = HubPolicy(fraction=0.1)
    thr = pol.threshold(degs)
    assert sum(d >= thr for d in degs) / len(degs) >= 0.1
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        assert HubPolicy(fraction=0.1, k_min=10, fitted_pmf=True).threshold(degs) >= 10


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(1, 200), min_size=1, max_size=300), st.floats(0.001, 1.0), st.floats(0.001, 1.0))
def test_dmin_monotone_in_h(degs, h1, h2):
    lo, hi = sorted((h1, h2))
    assert dmin_from_fraction(degs, hi) <= dmin_from_fraction(degs, lo)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(1, 200), min_size=1, max_size=300), st.floats(0.001, 1.0))
def test_fraction_mode_hub_count_meets_target(degs, h):
    thr = dmin_from_fraction(degs, h)
    assert sum(d >= thr for d in degs) / len(degs) >= h


@given(st.integers(0, 100), st.integers(1, 50))
def test_fixed_is_pure(deg, d_min):
    assert is_hub(deg, HubPolicy.fixed(d_min)) == (deg >= d_min)
