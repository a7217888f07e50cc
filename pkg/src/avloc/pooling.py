"""Intermediate pooling layer: fixed feedforward weights, exponential
activation and divisive normalization.

Three populations pool the input layer: unisensory auditory, unisensory
visual, and multisensory units that receive both modalities plus a constant
bias. The exponential nonlinearity turns the pooled (log-domain) evidence
into sharply peaked activity profiles.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (ActivityOverflowError, DEFAULT_GRID, EXP_OVERFLOW,
                   NetworkParams, SpatialGrid, wrapped_distance)
from .input_layer import InputActivity


@dataclass(frozen=True)
class PoolingWeights:
    """Stimulus-independent weight matrices, indexed [input unit, pooling unit].

    w_l / w_r pool the auditory subpopulations, w_v the visual population;
    the m-prefixed matrices are their multisensory counterparts with their
    own scales.
    """

    w_l: np.ndarray
    w_r: np.ndarray
    w_v: np.ndarray
    w_ml: np.ndarray
    w_mr: np.ndarray
    w_mv: np.ndarray


@dataclass
class PoolingActivity:
    """Activity of the three pooling populations. ``normalized`` records
    whether divisive normalization has been applied."""

    r_a: np.ndarray
    r_v: np.ndarray
    r_m: np.ndarray
    normalized: bool = False


def build_weights(params: NetworkParams, grid: SpatialGrid = DEFAULT_GRID) -> PoolingWeights:
    """Construct all six weight matrices for one parameter set.

    Auditory weights are sigmoids of the center difference, opposite in
    direction to the tuning of the corresponding input subpopulation, and
    split the scale over the subpopulation size. Visual weights are
    area-normalized Gaussians of the wrap-around center distance.
    """
    x = grid.centers
    n = grid.n
    diff = x[:, None] - x[None, :]
    wrapped = wrapped_distance(x[:, None], x[None, :], grid.length)
    rising = 1.0 / (n * (1.0 + np.exp(-diff / params.rise)))
    falling = 1.0 / (n * (1.0 + np.exp(diff / params.rise)))
    gauss = (np.exp(-(wrapped ** 2) / (2.0 * params.width ** 2))
             / (params.width * np.sqrt(2.0 * np.pi)))
    return PoolingWeights(
        w_l=params.scale_a * rising,
        w_r=params.scale_a * falling,
        w_v=params.scale_v * gauss,
        w_ml=params.scale_ma * rising,
        w_mr=params.scale_ma * falling,
        w_mv=params.scale_mv * gauss,
    )


_weights_cache: dict = {}


def weight_key(params: NetworkParams, grid: SpatialGrid) -> tuple:
    """Cache key over exactly the parameters the weight matrices depend on
    (gains and bias scale the inputs, not the weights)."""
    return (params.rise, params.width, params.scale_a, params.scale_v,
            params.scale_ma, params.scale_mv,
            grid.n, float(grid.centers[0]), grid.length)


def cached_weights(params: NetworkParams, grid: SpatialGrid = DEFAULT_GRID) -> PoolingWeights:
    """:func:`build_weights` with memoization; matrices are immutable."""
    key = weight_key(params, grid)
    w = _weights_cache.get(key)
    if w is None:
        w = build_weights(params, grid)
        _weights_cache[key] = w
    return w


def _activate(potential: np.ndarray) -> np.ndarray:
    peak = float(np.max(potential))
    if peak > EXP_OVERFLOW:
        raise ActivityOverflowError(
            f"pooled potential {peak:.1f} exceeds the exp() range; "
            "input gains or weight scales are pathological")
    return np.exp(potential)


def pool_unisensory_auditory(inp: InputActivity, weights: PoolingWeights) -> np.ndarray:
    """Auditory pooling activity: exponential of the weighted sum of both
    auditory input subpopulations."""
    return _activate(inp.theta_l @ weights.w_l + inp.theta_r @ weights.w_r)


def pool_unisensory_visual(inp: InputActivity, weights: PoolingWeights) -> np.ndarray:
    """Visual pooling activity."""
    return _activate(inp.theta_v @ weights.w_v)


def pool_multisensory(inp: InputActivity, weights: PoolingWeights, bias: float) -> np.ndarray:
    """Multisensory pooling activity: both modalities plus the constant bias."""
    return _activate(inp.theta_v @ weights.w_mv
                     + inp.theta_l @ weights.w_ml
                     + inp.theta_r @ weights.w_mr
                     + bias)


def pool_all(inp: InputActivity, weights: PoolingWeights, bias: float) -> PoolingActivity:
    """All three pooling populations for one input pattern, unnormalized."""
    return PoolingActivity(
        r_a=pool_unisensory_auditory(inp, weights),
        r_v=pool_unisensory_visual(inp, weights),
        r_m=pool_multisensory(inp, weights, bias),
    )


def divisive_normalize(pooling: PoolingActivity) -> PoolingActivity:
    """Divide every pooling unit by one plus the layer-average activity.

    The divisor is shared by all units, so argmax positions and all
    population-sum ratios are unchanged; the step only keeps activity in a
    reasonable numeric range.
    """
    if pooling.normalized:
        raise ValueError("pooling activity is already normalized")
    total = pooling.r_a.sum() + pooling.r_v.sum() + pooling.r_m.sum()
    count = pooling.r_a.size + pooling.r_v.size + pooling.r_m.size
    divisor = 1.0 + total / count
    return PoolingActivity(r_a=pooling.r_a / divisor,
                           r_v=pooling.r_v / divisor,
                           r_m=pooling.r_m / divisor,
                           normalized=True)


def relatedness_index(pooling: PoolingActivity) -> tuple[float, float]:
    """Multisensory and auditory pooled activity as fractions of their
    combined total.

    The multisensory fraction peaks for spatially aligned stimuli and falls
    below the auditory fraction at large disparities, mirroring the posterior
    probability of a common cause. Insensitive to normalization.
    """
    total_m = float(pooling.r_m.sum())
    total_a = float(pooling.r_a.sum())
    frac_m = total_m / (total_m + total_a)
    return frac_m, 1.0 - frac_m
