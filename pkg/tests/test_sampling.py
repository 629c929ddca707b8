import math
from fractions import Fraction

import numpy as np
import pytest
import scipy.stats

from cprank import (
    Model,
    RngState,
    enumerate_shapes,
    exact_moments,
    height_scaled_samples,
    monte_carlo,
    rank,
    sample_shape,
    shape_probability,
)
from cprank import backend, sampling
from cprank.ranking import _rank_of
from cprank import _scalar
from cprank.trees import is_canonical

from conftest import ALL_MODELS, total_variation

BACKENDS = ["numba", "numpy"] if backend.numba_available() else ["numpy"]


def test_sample_shape_trivial_and_canonical():
    rng = RngState(123)
    assert sample_shape(Model.YULE_HARDING, 1, rng).is_leaf
    for model in ALL_MODELS:
        for _ in range(25):
            t = sample_shape(model, 9, rng)
            assert t.leaves == 9
            assert is_canonical(t)
    assert rng.index == 101


def test_sample_shape_stream_matches_monte_carlo():
    rng = RngState(5)
    ranks = [rank(sample_shape(Model.UNIFORM_LABELED, 7, rng)) for _ in range(40)]
    rep = monte_carlo(Model.UNIFORM_LABELED, 7, 40, seed=5, with_histogram=True)
    hist = {}
    for r in ranks:
        hist[r] = hist.get(r, 0) + 1
    assert rep.shape_histogram == hist


@pytest.mark.parametrize("name", BACKENDS)
def test_backends_match_reference(name):
    k = backend.kernels(name)
    tabs = sampling._kernel_tables(8)
    for mid, mname in ((0, "yule"), (1, "uniform-labeled"), (2, "uniform-unordered")):
        ranks, heights = k.sample_rank_height(mid, 8, 60, np.uint64(77), 0, *tabs)
        for g in range(60):
            t = _scalar.sample_shape_at(mname, 8, 77, g)
            assert _rank_of(t) == ranks[g]
            assert t.height == heights[g]


@pytest.mark.skipif(len(BACKENDS) < 2, reason="numba unavailable")
def test_backends_match_each_other():
    kn = backend.kernels("numba")
    kp = backend.kernels("numpy")
    tabs = sampling._kernel_tables(8)
    for mid in (0, 1, 2):
        a = kn.sample_rank_height(mid, 8, 512, np.uint64(3), 0, *tabs)
        b = kp.sample_rank_height(mid, 8, 512, np.uint64(3), 0, *tabs)
        assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])
    for n in (2, 17, 131):
        assert np.array_equal(
            kn.yule_heights(n, 300, np.uint64(11), 0), kp.yule_heights(n, 300, np.uint64(11), 0)
        )
        assert np.array_equal(
            kn.remy_heights(n, 300, np.uint64(11), 0), kp.remy_heights(n, 300, np.uint64(11), 0)
        )


def test_start_offset_continues_the_stream():
    k = backend.kernels()
    tabs = sampling._kernel_tables(6)
    whole = k.sample_rank_height(0, 6, 100, np.uint64(9), 0, *tabs)
    tail = k.sample_rank_height(0, 6, 40, np.uint64(9), 60, *tabs)
    assert np.array_equal(whole[0][60:], tail[0])


def test_monte_carlo_determinism():
    a = monte_carlo(Model.UNIFORM_UNORDERED, 8, 2000, seed=42, with_histogram=True)
    b = monte_carlo(Model.UNIFORM_UNORDERED, 8, 2000, seed=42, with_histogram=True)
    assert a == b
    c = monte_carlo(Model.UNIFORM_UNORDERED, 8, 2000, seed=43, with_histogram=True)
    assert a != c


def test_monte_carlo_validation():
    with pytest.raises(ValueError):
        monte_carlo(Model.YULE_HARDING, 1, 100)
    with pytest.raises(ValueError):
        monte_carlo(Model.YULE_HARDING, 4, 1)
    with pytest.raises(ValueError):
        monte_carlo(Model.YULE_HARDING, 4, 100, height_only=True, with_histogram=True)


# chi-square thresholds are engineering picks (the reference gives exact
# distributions; these guard against gross errors only)
CHI2_PVALUE_FLOOR = 1e-6


@pytest.mark.parametrize("model", ALL_MODELS)
@pytest.mark.parametrize("n", [5, 8])
def test_sampler_distribution_chi_square(model, n):
    samples = 100_000
    rep = monte_carlo(model, n, samples, seed=2024, with_histogram=True)
    shapes = enumerate_shapes(n)
    expected = np.array(
        [float(shape_probability(t, model)) * samples for t in shapes], dtype=float
    )
    observed = np.array([rep.shape_histogram.get(rank(t), 0) for t in shapes], dtype=float)
    assert observed.sum() == samples
    _, p = scipy.stats.chisquare(observed, expected)
    assert p > CHI2_PVALUE_FLOOR


@pytest.mark.parametrize("model", ALL_MODELS)
def test_sampler_moments_against_exact(model):
    rep = monte_carlo(model, 8, 100_000, seed=7)
    ex = exact_moments(8, model)
    assert abs(rep.mean_loglog - ex.e_loglog_f) <= 3 * rep.se_loglog
    assert abs(rep.mean_height - float(ex.e_height)) <= 3 * rep.se_height
    assert abs(rep.caterpillar_freq - float(ex.caterpillar_prob)) <= 0.005


def test_reference_path_above_kernel_limit():
    model = Model.YULE_HARDING
    rep = monte_carlo(model, 11, 4000, seed=1, with_histogram=True)
    ex = exact_moments(11, model)
    assert abs(rep.mean_loglog - ex.e_loglog_f) <= 4 * rep.se_loglog
    tv = total_variation(
        rep.shape_histogram,
        {rank(t): shape_probability(t, model) for t in enumerate_shapes(11)},
        rep.samples,
    )
    assert tv < 0.12


def test_height_only_matches_full_heights_for_yule():
    # the yule height kernel replays the shape sampler's draws
    full = monte_carlo(Model.YULE_HARDING, 8, 5000, seed=3)
    honly = monte_carlo(Model.YULE_HARDING, 8, 5000, seed=3, height_only=True)
    assert full.mean_height == honly.mean_height
    assert full.caterpillar_freq == honly.caterpillar_freq
    assert honly.mean_loglog is None and honly.se_loglog is None


@pytest.mark.parametrize("model", [Model.UNIFORM_LABELED, Model.YULE_HARDING])
def test_height_only_distribution_matches_shape_sampler(model):
    # different constructions, same law: two-sample KS on heights at n=32
    full_heights = []
    for g in range(3000):
        full_heights.append(_scalar.sample_shape_at(model.value, 32, 15, g).height)
    honly = sampling._heights_array(model, 32, 3000, seed=16)
    _, p = scipy.stats.ks_2samp(full_heights, honly)
    assert p > 1e-5


def test_otter_equal_split_acceptance_mass():
    # each retry round at an equal split accepts with probability
    # (U+1)/(2U) >= 1/2, so expected retries per node stay below 2
    from cprank.enumeration import wedderburn

    for s in range(2, 33, 2):
        u = wedderburn(s // 2)
        accept = Fraction(u * (u + 1), 2 * u * u)
        assert accept >= Fraction(1, 2)


def test_yule_caterpillar_frequency_n4():
    rep = monte_carlo(Model.YULE_HARDING, 4, 100_000, seed=1)
    se = math.sqrt((2 / 3) * (1 / 3) / 100_000)
    assert abs(rep.caterpillar_freq - 2 / 3) <= 3 * se


def test_otter_equal_split_rejection_is_uniform():
    # n = 4 forces the equal split {2,2} half the time; all shapes must
    # still come out uniform
    rep = monte_carlo(Model.UNIFORM_UNORDERED, 4, 40_000, seed=11, with_histogram=True)
    assert set(rep.shape_histogram) == {4, 5}
    for count in rep.shape_histogram.values():
        assert abs(count / 40_000 - 0.5) < 0.01


def test_height_scaled_samples_scalings():
    vals = height_scaled_samples(Model.UNIFORM_LABELED, 2, 10, seed=0)
    assert vals == [1.0 / (2.0 * math.sqrt(2))] * 10
    vals = height_scaled_samples(Model.YULE_HARDING, 2, 10, seed=0)
    assert vals == [1.0 / math.log(2)] * 10
    from cprank.asymptotics import CONSTANTS

    vals = height_scaled_samples(Model.UNIFORM_UNORDERED, 2, 10, seed=0)
    assert vals == [1.0 / (CONSTANTS.kappa * math.sqrt(2 / math.pi))] * 10


def test_large_n_height_only_smoke():
    rep = monte_carlo(Model.YULE_HARDING, 200_000, 20, seed=0, height_only=True)
    alpha = 4.31107
    assert 0.7 * alpha <= rep.mean_height / math.log(200_000) <= alpha
    rep = monte_carlo(Model.UNIFORM_LABELED, 20_000, 20, seed=0, height_only=True)
    assert 0.7 <= rep.mean_height / (2 * math.sqrt(math.pi * 20_000)) <= 1.1


def test_histogram_counts_sum_to_samples():
    rep = monte_carlo(Model.UNIFORM_LABELED, 6, 12345, seed=9, with_histogram=True)
    assert sum(rep.shape_histogram.values()) == 12345
    probs = {rank(t): shape_probability(t, Model.UNIFORM_LABELED) for t in enumerate_shapes(6)}
    assert set(rep.shape_histogram) <= set(probs)


def test_seed_is_masked_to_64_bits():
    a = monte_carlo(Model.YULE_HARDING, 6, 100, seed=1 << 64)
    b = monte_carlo(Model.YULE_HARDING, 6, 100, seed=0)
    assert a == b
