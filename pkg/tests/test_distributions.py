"""Distribution families: pmf/cdf/quantile/sampling contracts and the
closed-form moment formulae."""

import math
import pickle
from concurrent.futures import ThreadPoolExecutor

import mpmath as mp
import numpy as np
import pytest
import scipy.stats
from numpy.testing import assert_allclose, assert_array_equal

from citefit import (
    DiscretisedLognormal,
    DomainError,
    HookedPowerLaw,
    InvalidWeightsError,
    Mixture,
    MomentUndefinedError,
    ParameterError,
    continuous_moments,
    make_model,
)
from citefit.subjects import SUBJECTS

mp.mp.dps = 50

ZETA2_MINUS_1 = math.pi ** 2 / 6.0 - 1.0


# --- parameter validation ----------------------------------------------------

@pytest.mark.parametrize("mu,sigma", [(0.0, 0.0), (0.0, -1.0), (math.nan, 1.0),
                                      (math.inf, 1.0), (0.0, math.inf)])
def test_lognormal_rejects_bad_parameters(mu, sigma):
    with pytest.raises(ParameterError):
        DiscretisedLognormal(mu, sigma)


@pytest.mark.parametrize("alpha,b", [(1.0, 1.0), (0.5, 1.0), (2.0, 0.0),
                                     (2.0, -3.0), (math.nan, 1.0)])
def test_hooked_rejects_bad_parameters(alpha, b):
    with pytest.raises(ParameterError):
        HookedPowerLaw(alpha, b)


def test_make_model():
    assert make_model("lognormal", 1.0, 2.0).params == {"mu": 1.0, "sigma": 2.0}
    assert make_model("hooked", 2.0, 3.0).params == {"alpha": 2.0, "b": 3.0}
    with pytest.raises(ParameterError):
        make_model("weibull", 1.0, 2.0)


@pytest.mark.parametrize("x", [0, -1, 2.5])
def test_support_starts_at_one(x):
    model = HookedPowerLaw(2.0, 1.0)
    with pytest.raises(DomainError):
        model.pmf(x)
    with pytest.raises(DomainError):
        model.cdf(x)


@pytest.mark.parametrize("u", [-0.1, 1.0, 1.5, math.nan])
def test_quantile_domain(u):
    with pytest.raises(DomainError):
        HookedPowerLaw(2.0, 1.0).quantile(u)


# --- hooked pmf/cdf oracles --------------------------------------------------

def test_hooked_pmf_ratio_is_normalizer_free():
    model = HookedPowerLaw(2.0, 1.0)
    assert model.pmf(1) / model.pmf(3) == pytest.approx(4.0, rel=1e-12)


def test_hooked_pmf_ratio_identity_across_parameters():
    rng = np.random.default_rng(3)
    for alpha, b in [(2.0, 1.0), (3.94, 67.9), (1.2, 0.5), (14.74, 329.5)]:
        model = HookedPowerLaw(alpha, b)
        xs = rng.integers(1, 5000, size=20)
        ys = rng.integers(1, 5000, size=20)
        got = model.pmf(xs) / model.pmf(ys)
        expected = ((b + ys) / (b + xs)) ** alpha
        assert_allclose(got, expected, rtol=1e-10)


def test_hooked_pmf_against_closed_form_normalizer():
    # sum of (1+x)^-2 over x >= 1 is pi^2/6 - 1
    model = HookedPowerLaw(2.0, 1.0)
    assert model.pmf(1) == pytest.approx(0.25 / ZETA2_MINUS_1, rel=1e-10)
    assert model.pmf(2) == pytest.approx((1 / 9) / ZETA2_MINUS_1, rel=1e-10)
    assert model.cdf(2) == pytest.approx((0.25 + 1 / 9) / ZETA2_MINUS_1, rel=1e-10)


def test_hooked_normalizer_against_hurwitz_zeta():
    mp.mp.dps = 120
    for alpha, b in [(2.0, 1.0), (1.001, 0.1), (2.06, 7.1), (3.94, 67.9),
                     (14.74, 329.5), (30.17, 713.6), (3.0, 1e7)]:
        model = HookedPowerLaw(alpha, b)
        exact = mp.zeta(mp.mpf(alpha), mp.mpf(b) + 1)
        got = mp.exp(mp.mpf(model.log_normalizer))
        assert abs(got - exact) / exact < 1e-10, (alpha, b)
    mp.mp.dps = 50


# --- lognormal pmf oracles ---------------------------------------------------

def _phi(z):
    return 0.5 * mp.erfc(-mp.mpf(z) / mp.sqrt(2))


def test_lognormal_pmf_one_against_mpmath():
    model = DiscretisedLognormal(0.0, 1.0)
    num = _phi(mp.log(mp.mpf("1.5"))) - _phi(mp.log(mp.mpf("0.5")))
    den = 1 - _phi(mp.log(mp.mpf("0.5")))
    assert model.pmf(1) == pytest.approx(float(num / den), rel=1e-12)
    assert model.pmf(1) == pytest.approx(0.5468, abs=5e-5)


def test_lognormal_pmf_equals_normal_cdf_differences():
    for mu, sigma in [(0.0, 1.0), (2.54, 1.26), (-0.38, 1.73)]:
        model = DiscretisedLognormal(mu, sigma)
        norm = float(1 - _phi((mp.log(mp.mpf("0.5")) - mu) / sigma))
        for x in (1, 2, 3, 10, 50, 400):
            hi = _phi((mp.log(x + mp.mpf("0.5")) - mu) / sigma)
            lo = _phi((mp.log(x - mp.mpf("0.5")) - mu) / sigma)
            assert model.pmf(x) * norm == pytest.approx(float(hi - lo), rel=1e-12)


def test_lognormal_tail_reaches_one():
    model = DiscretisedLognormal(0.0, 1.0)
    assert model.cdf(10 ** 6) >= 1 - 1e-6


# --- cdf/quantile contracts --------------------------------------------------

@pytest.mark.parametrize("model", [
    HookedPowerLaw(2.0, 1.0),
    HookedPowerLaw(5.07, 41.9),
    DiscretisedLognormal(0.0, 1.0),
    DiscretisedLognormal(2.08, 1.11),
])
def test_cdf_monotone_and_bounded(model):
    grid = model.cdf_grid(10_000)
    assert np.all(np.diff(grid) >= 0.0)
    assert grid[0] > 0.0
    assert grid[-1] <= 1.0
    assert model.cdf(1) == pytest.approx(model.pmf(1), rel=1e-12)


def test_normalization_with_tail_correction_over_fixture():
    # truncated pmf sum plus the family tail term must reach 1 to 1e-9
    for subject in SUBJECTS:
        for model in (subject.lognormal(), subject.hooked()):
            xmax = 100_000
            total = float(np.exp(model._log_pmf(np.arange(1, xmax + 1))).sum())
            total += 1.0 - model._cdf_beyond(xmax)
            assert abs(total - 1.0) <= 1e-9, (subject.name, model.family)


def test_quantile_examples():
    model = HookedPowerLaw(2.0, 1.0)
    assert model.quantile(0.0) == 1
    assert model.quantile(0.3) == 1
    assert model.quantile(0.5) == 2
    assert DiscretisedLognormal(3.0, 1.2).quantile(0.0) == 1


@pytest.mark.parametrize("model", [
    HookedPowerLaw(2.0, 1.0),
    HookedPowerLaw(3.94, 67.9),
    DiscretisedLognormal(2.08, 1.11),
])
def test_quantile_cdf_adjoint(model):
    xs = np.arange(1, 3000)
    cdf = model.cdf(xs)
    q = model.quantile(np.minimum(cdf, 1.0 - 1e-12))
    assert np.all(q <= xs)
    us = np.linspace(0.0, 0.99999, 1001)
    xq = model.quantile(us)
    assert np.all(model.cdf(xq) >= us)


def test_quantile_deep_tail_bisection():
    # far enough into the tail that the cached table alone cannot reach
    model = HookedPowerLaw(1.8, 2.0)
    u = 1.0 - 1e-6
    x = model.quantile(u)
    assert model.cdf(x) >= u
    assert model.cdf(x - 1) < u
    assert x > 10_000_000


# --- sampling ----------------------------------------------------------------

def test_sample_empty_and_negative():
    model = HookedPowerLaw(2.0, 1.0)
    assert model.sample(0, 1).size == 0
    with pytest.raises(DomainError):
        model.sample(-1, 1)


def test_sample_deterministic():
    model = DiscretisedLognormal(2.08, 1.11)
    assert_array_equal(model.sample(5000, 99), model.sample(5000, 99))
    assert not np.array_equal(model.sample(5000, 99), model.sample(5000, 100))


def test_sample_frequency_of_one_matches_pmf():
    model = HookedPowerLaw(2.0, 1.0)
    draws = model.sample(100_000, 2024)
    freq = float((draws == 1).mean())
    assert abs(freq - 0.25 / ZETA2_MINUS_1) <= 0.005


@pytest.mark.parametrize("model", [HookedPowerLaw(2.0, 1.0),
                                   DiscretisedLognormal(1.0, 1.0)])
def test_sampling_consistency_over_low_support(model):
    n = 100_000
    draws = model.sample(n, 7)
    for x in range(1, 21):
        expected = n * model.pmf(x)
        observed = int((draws == x).sum())
        assert abs(observed - expected) <= 4.0 * math.sqrt(expected), x


def test_concurrent_quantiles_match_sequential():
    us = np.random.default_rng(5).random(20_000) * 0.99999
    shared = HookedPowerLaw(3.94, 67.9)
    chunks = np.array_split(us, 16)
    with ThreadPoolExecutor(8) as pool:
        threaded = np.concatenate(list(pool.map(shared.quantile, chunks)))
    reference = HookedPowerLaw(3.94, 67.9).quantile(us)
    assert_array_equal(threaded, reference)


def test_models_pickle_roundtrip():
    for model in (HookedPowerLaw(3.94, 67.9), DiscretisedLognormal(2.08, 1.11)):
        clone = pickle.loads(pickle.dumps(model))
        assert clone == model
        assert_array_equal(clone.sample(100, 3), model.sample(100, 3))


# --- continuous moments ------------------------------------------------------

def test_lognormal_moments_closed_form():
    model = DiscretisedLognormal(2.54, 1.26)
    moments = continuous_moments(model)
    assert moments.mean == pytest.approx(28.0447, abs=1e-3)
    ref = scipy.stats.lognorm(s=1.26, scale=math.exp(2.54))
    assert moments.mean == pytest.approx(ref.mean(), rel=1e-12)
    assert moments.sd == pytest.approx(ref.std(), rel=1e-12)


def test_hooked_moments_lomax_convention():
    model = HookedPowerLaw(5.76, 89.8)
    moments = continuous_moments(model)
    assert moments.mean == pytest.approx(89.8 / 4.76, rel=1e-12)
    assert moments.mean == pytest.approx(18.8655, abs=1e-3)
    ref = scipy.stats.lomax(c=5.76, scale=89.8)
    assert moments.mean == pytest.approx(ref.mean(), rel=1e-12)
    assert moments.sd == pytest.approx(ref.std(), rel=1e-12)


def test_hooked_sd_undefined_at_low_alpha():
    model = HookedPowerLaw(1.5, 10.0)
    with pytest.raises(MomentUndefinedError):
        model.continuous_sd()
    moments = continuous_moments(model)
    assert moments.mean == pytest.approx(20.0)
    assert moments.sd is None
    assert not moments.sd_defined


# --- mixtures ----------------------------------------------------------------

def test_mixture_weight_validation():
    comp = DiscretisedLognormal(1.0, 1.0)
    with pytest.raises(InvalidWeightsError):
        Mixture([], [])
    with pytest.raises(InvalidWeightsError):
        Mixture([comp], [0.0])
    with pytest.raises(InvalidWeightsError):
        Mixture([comp, comp], [1.0, -0.5])
    assert_allclose(Mixture([comp, comp], [2.0, 6.0]).weights, [0.25, 0.75])


def test_single_component_mixture_is_bitwise_identical():
    base = DiscretisedLognormal(2.0, 1.1)
    mix = Mixture([DiscretisedLognormal(2.0, 1.1)], [1.0])
    assert_array_equal(mix.sample(10_000, 42), base.sample(10_000, 42))
    xs = np.arange(1, 500)
    assert_array_equal(mix.pmf(xs), base.pmf(xs))
    assert_array_equal(mix.cdf(xs), base.cdf(xs))


def test_identical_component_mixture_matches_pure_sampler():
    base = DiscretisedLognormal(2.0, 1.1)
    mix = Mixture([DiscretisedLognormal(2.0, 1.1),
                   DiscretisedLognormal(2.0, 1.1)], [0.5, 0.5])
    assert_array_equal(mix.sample(5000, 17), base.sample(5000, 17))


def test_mixture_pmf_is_weighted_sum():
    a = DiscretisedLognormal(1.0, 1.0)
    b = HookedPowerLaw(3.0, 10.0)
    mix = Mixture([a, b], [0.25, 0.75])
    xs = np.arange(1, 200)
    assert_allclose(mix.pmf(xs), 0.25 * a.pmf(xs) + 0.75 * b.pmf(xs), rtol=1e-12)


def test_mixture_mean_is_convex_combination():
    a = DiscretisedLognormal(1.0, 1.0)
    b = DiscretisedLognormal(3.5, 1.0)
    mix = Mixture([a, b], [0.5, 0.5])
    draws = mix.sample(100_000, 8)
    mean_a = continuous_moments(a).mean
    mean_b = continuous_moments(b).mean
    assert mean_a < draws.mean() < mean_b
