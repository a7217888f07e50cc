import numpy as np
import pytest
from dataclasses import replace

from avloc import (ActivityOverflowError, DEFAULT_GRID, NetworkParams,
                   StimulusEvent, build_weights, divisive_normalize,
                   gaussian_fit_rmse, input_for_event, pool_all,
                   pool_multisensory, pool_unisensory_auditory,
                   pool_unisensory_visual, relatedness_index)
from avloc.pooling import PoolingActivity

PARAMS = NetworkParams()
WEIGHTS = build_weights(PARAMS)
N = DEFAULT_GRID.n


def _event_input(s_a=None, s_v=None):
    return input_for_event(StimulusEvent(auditory=s_a, visual=s_v), PARAMS)


def test_auditory_weight_at_matching_centers():
    # sigmoid midpoint: scale / (2 n)
    assert WEIGHTS.w_l[0, 0] == pytest.approx(2.0 / 602.0)
    assert WEIGHTS.w_l[0, 0] == pytest.approx(0.003322, abs=1e-6)


def test_visual_weight_peak():
    assert WEIGHTS.w_v[5, 5] == pytest.approx(5.0 / (20.0 * np.sqrt(2 * np.pi)))
    assert WEIGHTS.w_v[5, 5] == pytest.approx(0.09974, abs=1e-5)


def test_multisensory_visual_weight_peak():
    assert WEIGHTS.w_mv[5, 5] == pytest.approx(2.0 / (20.0 * np.sqrt(2 * np.pi)))
    assert WEIGHTS.w_mv[5, 5] == pytest.approx(0.03989, abs=1e-5)


def test_complementary_weights_sum_to_scale_over_n():
    total = WEIGHTS.w_l + WEIGHTS.w_r
    assert np.allclose(total, PARAMS.scale_a / N)


def test_constant_input_pools_to_scale_times_constant():
    # summing (w_l + w_r) * c over input units gives scale_a * c per pooling unit
    c = 3.7
    column_sums = c * (WEIGHTS.w_l.sum(axis=0) + WEIGHTS.w_r.sum(axis=0))
    assert np.allclose(column_sums, PARAMS.scale_a * c)


def test_zero_input_pools_to_ones():
    inp = _event_input(s_v=0.0)  # auditory silent
    assert np.allclose(pool_unisensory_auditory(inp, WEIGHTS), 1.0)
    inp = _event_input(s_a=0.0)  # visual silent
    assert np.allclose(pool_unisensory_visual(inp, WEIGHTS), 1.0)
    silent = replace(_event_input(s_a=0.0), theta_l=np.zeros(N), theta_r=np.zeros(N))
    assert np.allclose(pool_multisensory(silent, WEIGHTS, 0.0), 1.0)


def test_auditory_pooling_peaks_at_stimulus():
    r = pool_unisensory_auditory(_event_input(s_a=0.0), WEIGHTS)
    assert DEFAULT_GRID.centers[np.argmax(r)] == 0.0


def test_visual_pooling_peaks_at_stimulus():
    r = pool_unisensory_visual(_event_input(s_v=20.0), WEIGHTS)
    assert DEFAULT_GRID.centers[np.argmax(r)] == 20.0


def test_pooled_profiles_are_nearly_gaussian():
    aud = pool_unisensory_auditory(_event_input(s_a=0.0), WEIGHTS)
    vis = pool_unisensory_visual(_event_input(s_v=0.0), WEIGHTS)
    assert gaussian_fit_rmse(aud) < 0.01
    assert gaussian_fit_rmse(vis) < 0.01


def test_multisensory_peak_between_the_unisensory_peaks():
    inp = _event_input(s_a=0.0, s_v=30.0)
    r_m = pool_multisensory(inp, WEIGHTS, 10.5)
    peak = DEFAULT_GRID.centers[np.argmax(r_m)]
    assert 0.0 <= peak <= 30.0


def test_pooling_translation_equivariance():
    base = pool_unisensory_visual(_event_input(s_v=0.0), WEIGHTS)
    shifted = pool_unisensory_visual(_event_input(s_v=15.0), WEIGHTS)
    assert np.argmax(shifted) - np.argmax(base) == 15


def test_overflow_guard_trips_on_pathological_gain():
    huge = NetworkParams(gain_a=10000.0)
    inp = input_for_event(StimulusEvent(auditory=0.0), huge)
    with pytest.raises(ActivityOverflowError):
        pool_unisensory_auditory(inp, build_weights(huge))


def test_divisive_normalization_forced_arithmetic():
    ones = PoolingActivity(r_a=np.ones(N), r_v=np.ones(N), r_m=np.ones(N))
    out = divisive_normalize(ones)
    assert np.allclose(out.r_a, 0.5)
    assert np.allclose(out.r_v, 0.5)
    assert np.allclose(out.r_m, 0.5)
    assert out.normalized


def test_divisive_normalization_rejects_double_application():
    ones = PoolingActivity(r_a=np.ones(N), r_v=np.ones(N), r_m=np.ones(N))
    with pytest.raises(ValueError):
        divisive_normalize(divisive_normalize(ones))


def test_normalization_preserves_argmax_and_ratios():
    pooled = pool_all(_event_input(s_a=0.0, s_v=20.0), WEIGHTS, 10.5)
    normed = divisive_normalize(pooled)
    for raw, out in ((pooled.r_a, normed.r_a), (pooled.r_v, normed.r_v),
                     (pooled.r_m, normed.r_m)):
        assert np.argmax(raw) == np.argmax(out)
    before = pooled.r_m.sum() / pooled.r_a.sum()
    after = normed.r_m.sum() / normed.r_a.sum()
    assert before == pytest.approx(after, rel=1e-12)
    assert relatedness_index(pooled) == pytest.approx(relatedness_index(normed))


def _fraction_curve(bias, disparities):
    fracs = []
    for d in disparities:
        pooled = pool_all(_event_input(s_a=0.0, s_v=float(d)), WEIGHTS, bias)
        fracs.append(relatedness_index(pooled)[0])
    return np.asarray(fracs)


def test_relatedness_peaks_at_zero_disparity():
    disparities = np.arange(0, 92, 2)
    curve = _fraction_curve(10.5, disparities)
    assert curve.argmax() == 0


def test_relatedness_drops_below_unisensory_at_large_disparity():
    for d in (40, 60, 80):
        pooled = pool_all(_event_input(s_a=0.0, s_v=float(d)), WEIGHTS, 10.5)
        frac_m, frac_a = relatedness_index(pooled)
        assert frac_m < frac_a


def test_lower_bias_lowers_the_whole_relatedness_curve():
    disparities = np.arange(0, 92, 2)
    high = _fraction_curve(10.5, disparities)
    low = _fraction_curve(9.1, disparities)
    assert np.all(low < high)
