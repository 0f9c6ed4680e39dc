import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.stats import binom

from braesslab.errors import ParameterError
from braesslab.smallball import (
    BernoulliSumSpec,
    conc_exact_1d,
    conc_monte_carlo,
    exact_pmf,
    lo_bound_check,
    rv_projection_check,
    sample_sums,
)


def test_spec_validation_and_properties():
    with pytest.raises(ParameterError):
        BernoulliSumSpec((1.0,), 0.0)
    spec = BernoulliSumSpec((1.0, 0.5, -2.0, 1.0), 0.3)
    assert spec.large_weight_count == 3
    assert spec.magnitude_bound == pytest.approx(2.5)


def test_exact_pmf_matches_binomial():
    m, p = 40, 0.3
    pmf, offset = exact_pmf(BernoulliSumSpec((1.0,) * m, p))
    assert offset == 0
    np.testing.assert_allclose(pmf, binom.pmf(np.arange(m + 1), m, p), atol=1e-13)
    assert pmf.sum() == pytest.approx(1.0, abs=1e-12)


def test_exact_pmf_negative_weights():
    # X = Ber - Ber takes values -1, 0, 1
    pmf, offset = exact_pmf(BernoulliSumSpec((1.0, -1.0), 0.5))
    assert offset == -1
    np.testing.assert_allclose(pmf, [0.25, 0.5, 0.25], atol=1e-15)


def test_exact_pmf_rejects_fractional_weights():
    with pytest.raises(ParameterError):
        exact_pmf(BernoulliSumSpec((0.5, 1.0), 0.5))


def test_conc_exact_matches_bruteforce_window():
    m, p, t = 30, 0.4, 2.5
    spec = BernoulliSumSpec((1.0,) * m, p)
    pmf = binom.pmf(np.arange(m + 1), m, p)
    # brute force over all integer windows of diameter 2t
    w = int(math.floor(2 * t)) + 1
    oracle = max(pmf[k : k + w].sum() for k in range(m + 2 - w))
    assert conc_exact_1d(spec, t).value == pytest.approx(oracle, abs=1e-13)


def test_conc_exact_radius_zero_is_mode():
    m, p = 20, 0.5
    spec = BernoulliSumSpec((1.0,) * m, p)
    assert conc_exact_1d(spec, 0.0).value == pytest.approx(
        binom.pmf(10, m, p), abs=1e-13
    )


def test_conc_exact_large_radius_is_one():
    spec = BernoulliSumSpec((1.0,) * 15, 0.5)
    assert conc_exact_1d(spec, 100.0).value == pytest.approx(1.0, abs=1e-12)


def test_sample_sums_moments():
    spec = BernoulliSumSpec((1.0,) * 50, 0.5)
    rng = np.random.Generator(np.random.Philox(key=1))
    x = sample_sums(spec, (200_000,), rng)
    assert x.mean() == pytest.approx(25.0, abs=0.1)
    assert x.var() == pytest.approx(12.5, rel=0.05)


def test_monte_carlo_agrees_with_exact():
    spec = BernoulliSumSpec((1.0,) * 60, 0.5)
    rng = np.random.Generator(np.random.Philox(key=2))
    pts = sample_sums(spec, (300_000,), rng)
    est, se = conc_monte_carlo(pts, 1.0)
    exact = conc_exact_1d(spec, 1.0).value
    assert abs(est - exact) <= 4 * se


def test_lo_bound_check_constants():
    res = lo_bound_check(BernoulliSumSpec((1.0,) * 100, 0.5), 1.0)
    assert res.m == 100
    assert res.estimate.value <= res.bound
    assert res.implied_C <= 2.0
    with pytest.raises(ParameterError):
        lo_bound_check(BernoulliSumSpec((1.0,) * 100, 0.5), 0.5)
    with pytest.raises(ParameterError):
        lo_bound_check(BernoulliSumSpec((0.5, 0.5), 0.5), 1.0)


def test_lo_bound_scaling_law():
    # conc at fixed radius shrinks like 1/sqrt(m)
    v25 = lo_bound_check(BernoulliSumSpec((1.0,) * 25, 0.5), 1.0).estimate.value
    v100 = lo_bound_check(BernoulliSumSpec((1.0,) * 100, 0.5), 1.0).estimate.value
    assert v100 / v25 == pytest.approx(0.5, rel=0.15)


def test_projection_check_basic():
    spec = BernoulliSumSpec((1.0,) * 50, 0.5)
    res = rv_projection_check(3, 8, spec, t=1.0, trials=50_000, seed=11)
    assert 0.0 < res.estimate.value < 1.0
    assert res.radius == pytest.approx(math.sqrt(3.0))
    assert res.q == pytest.approx(conc_exact_1d(spec, 1.0).value)
    assert res.K == pytest.approx(50.0)
    # fitted constant reproduces the estimate through the bound formula
    assert res.bound(res.fitted_C) == pytest.approx(res.estimate.value, rel=1e-9)


def test_projection_check_deterministic():
    spec = BernoulliSumSpec((1.0,) * 20, 0.5)
    r1 = rv_projection_check(2, 5, spec, t=1.0, trials=20_000, seed=3)
    r2 = rv_projection_check(2, 5, spec, t=1.0, trials=20_000, seed=3)
    assert r1.estimate.value == r2.estimate.value


def test_projection_check_validation():
    spec = BernoulliSumSpec((1.0,) * 10, 0.5)
    with pytest.raises(ParameterError):
        rv_projection_check(5, 5, spec, t=1.0, trials=100, seed=0)
    with pytest.raises(ParameterError):
        rv_projection_check(2, 5, spec, t=0.0, trials=100, seed=0)


@settings(max_examples=20, deadline=None)
@given(
    m=st.integers(1, 25),
    p=st.floats(0.1, 0.9),
    t=st.floats(0.0, 5.0),
)
def test_conc_is_probability_and_monotone_in_t(m, p, t):
    spec = BernoulliSumSpec((1.0,) * m, p)
    v = conc_exact_1d(spec, t).value
    assert 0.0 < v <= 1.0 + 1e-12
    assert conc_exact_1d(spec, t + 1.0).value >= v - 1e-12
