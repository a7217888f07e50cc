"""Fitting the multisensory bias against the causal-inference observer, and
the closed-form laws that predict it from the common-cause prior and the
input gains.

The network's sweep decodes depend on the bias only through an additive term
in the multisensory potential, so candidate biases share one set of pooled
potentials per stimulus; the whole lattice is evaluated with a handful of
matrix products per sweep point.
"""

from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np

from .core import DEFAULT_GRID, LatticeBoundaryError, NetworkParams, SpatialGrid
from .causal_inference import DisparityCurve, ObserverParams, disparity_sweep
from .input_layer import StimulusEvent, input_for_event
from .network import argmax_center
from .pooling import (cached_weights, pool_unisensory_auditory,
                      pool_unisensory_visual, weight_key)
from .readout import profile_peak_and_width

LOGIT_SCALE = 0.7
GAIN_A_COEF = 0.866
GAIN_V_COEF = -1.4025
GAIN_INTERCEPT = 1.616
MU_STEP = 0.05
MU_HALFWIDTH = 5.0

DEFAULT_SWEEP = np.arange(-90.0, 91.0, 2.0)


def mu_from_pcommon(p_common: float, c: float) -> float:
    """Bias predicted for a common-cause prior: a scaled base-10 logit plus
    the constant ``c`` (the bias at p_common = 0.5)."""
    if not 0.0 < p_common < 1.0:
        raise ValueError("logit undefined at p_common of 0 or 1")
    return math.log10(p_common / (1.0 - p_common)) / LOGIT_SCALE + c


def c_from_gains(gain_a: float, gain_v: float) -> float:
    """Empirical linear prediction of the bias constant ``c`` from the input
    gains; valid over the gain ranges explored here."""
    return GAIN_A_COEF * gain_a + GAIN_V_COEF * gain_v + GAIN_INTERCEPT


def fit_logit_curve(points) -> tuple[float, float]:
    """Least-squares ``c`` for the fixed-slope scaled-logit law over
    ``(p_common, mu)`` pairs; returns (c, rmse of the residuals)."""
    pts = [(float(p), float(mu)) for p, mu in points]
    if len(pts) < 3:
        raise ValueError("need at least three points")
    shifted = [mu - mu_from_pcommon(p, 0.0) for p, mu in pts]
    c = float(np.mean(shifted))
    rmse = float(np.sqrt(np.mean([(s - c) ** 2 for s in shifted])))
    return c, rmse


def fit_c_plane(samples) -> tuple[float, float, float, float]:
    """Ordinary least-squares plane through ``(gain_a, gain_v, c)`` samples.

    Returns (coef_gain_a, coef_gain_v, intercept, r_squared). Raises on
    fewer than four samples or a collinear gain design.
    """
    arr = np.asarray([[ga, gv, c] for ga, gv, c in samples], dtype=float)
    if arr.shape[0] < 4:
        raise ValueError("need at least four samples")
    design = np.column_stack([arr[:, 0], arr[:, 1], np.ones(arr.shape[0])])
    if np.linalg.matrix_rank(design) < 3:
        raise np.linalg.LinAlgError("gain design is collinear")
    coef, *_ = np.linalg.lstsq(design, arr[:, 2], rcond=None)
    resid = arr[:, 2] - design @ coef
    ss_res = float(resid @ resid)
    ss_tot = float(np.sum((arr[:, 2] - arr[:, 2].mean()) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return float(coef[0]), float(coef[1]), float(coef[2]), r2


def mu_lattice(center: float, halfwidth: float = MU_HALFWIDTH,
               step: float = MU_STEP) -> np.ndarray:
    """Absolute lattice of bias candidates (multiples of ``step``) covering
    ``center`` plus/minus ``halfwidth``."""
    lo = math.floor((center - halfwidth) / step)
    hi = math.ceil((center + halfwidth) / step)
    return np.round(np.arange(lo, hi + 1) * step, 10)


def readout_sds(params: NetworkParams, grid: SpatialGrid = DEFAULT_GRID) -> tuple[float, float]:
    """Unisensory likelihood SDs of this parameter set, read from the
    noiseless pooling profiles for stimuli at azimuth zero."""
    weights = cached_weights(params, grid)
    aud = input_for_event(StimulusEvent(auditory=0.0), params, grid=grid)
    vis = input_for_event(StimulusEvent(visual=0.0), params, grid=grid)
    sd_a = profile_peak_and_width(pool_unisensory_auditory(aud, weights), grid).sd
    sd_v = profile_peak_and_width(pool_unisensory_visual(vis, weights), grid).sd
    return sd_a, sd_v


def readout_observer(params: NetworkParams, p_common: float,
                     grid: SpatialGrid = DEFAULT_GRID) -> ObserverParams:
    """Observer whose likelihood widths are this network's own readout SDs."""
    sd_a, sd_v = readout_sds(params, grid)
    return ObserverParams(sigma_a=sd_a, sigma_v=sd_v, p_common=p_common)


_oracle_cache: dict = {}


def oracle_sweep(observer: ObserverParams, s_a: float = 0.0, s_v_values=DEFAULT_SWEEP,
                 n_samples: int = 10000, seed: int = 0) -> DisparityCurve:
    """:func:`disparity_sweep` with memoization; fitting loops and acceptance
    checks revisit the same curves many times."""
    key = (round(observer.sigma_a, 9), round(observer.sigma_v, 9),
           round(observer.p_common, 9), float(s_a),
           tuple(np.asarray(s_v_values, dtype=float)), int(n_samples), int(seed))
    curve = _oracle_cache.get(key)
    if curve is None:
        curve = disparity_sweep(s_a, s_v_values, observer,
                                n_samples=n_samples, seed=seed)
        _oracle_cache[key] = curve
    return curve


_network_cache: dict = {}


def network_sweep_decodes(params: NetworkParams, mus, s_a: float = 0.0,
                          s_v_values=DEFAULT_SWEEP,
                          grid: SpatialGrid = DEFAULT_GRID) -> tuple[np.ndarray, np.ndarray]:
    """Noiseless decoded estimates for every (bias candidate, visual location)
    pair; arrays of shape (len(mus), len(s_v_values)).

    Decoding is argmax-based and thus invariant to the common rescaling used
    to keep the exponentials in float range.
    """
    mus = np.asarray(mus, dtype=float)
    s_v_values = np.asarray(s_v_values, dtype=float)
    key = (weight_key(params, grid), params.gain_a, params.gain_v, float(s_a),
           tuple(s_v_values), tuple(mus))
    hit = _network_cache.get(key)
    if hit is not None:
        return hit
    w = cached_weights(params, grid)
    est_a = np.empty((mus.size, s_v_values.size))
    est_v = np.empty((mus.size, s_v_values.size))
    for k, s_v in enumerate(s_v_values):
        inp = input_for_event(StimulusEvent(auditory=s_a, visual=float(s_v)),
                              params, grid=grid)
        v_a = inp.theta_l @ w.w_l + inp.theta_r @ w.w_r
        v_v = inp.theta_v @ w.w_v
        v_m = inp.theta_v @ w.w_mv + inp.theta_l @ w.w_ml + inp.theta_r @ w.w_mr
        shift = max(v_a.max(), v_v.max(), v_m.max() + mus.max())
        r_a = np.exp(v_a - shift)
        r_v = np.exp(v_v - shift)
        r_m = np.exp(v_m[None, :] + mus[:, None] - shift)
        rho_v = r_v @ w.w_v.T + r_m @ w.w_mv.T
        rho_l = r_a @ w.w_l.T + r_m @ w.w_ml.T
        rho_r = r_a @ w.w_r.T + r_m @ w.w_mr.T
        prod = rho_l * rho_r
        for i in range(mus.size):
            est_a[i, k] = argmax_center(prod[i], grid)
            est_v[i, k] = argmax_center(rho_v[i], grid)
    est_a.setflags(write=False)
    est_v.setflags(write=False)
    _network_cache[key] = (est_a, est_v)
    return est_a, est_v


@dataclass(frozen=True)
class FitResult:
    """Best-fitting bias for one common-cause prior, with the per-modality
    sweep residuals at that bias."""

    mu: float
    rmse_a: float
    rmse_v: float
    p_common: float


def fit_mu(p_common: float, params: NetworkParams, s_a: float = 0.0,
           s_v_values=DEFAULT_SWEEP, n_samples: int = 10000, seed: int = 0,
           grid: SpatialGrid = DEFAULT_GRID, lattice=None) -> FitResult:
    """Grid-search the bias that best matches the observer's mean estimates.

    The observer uses this parameter set's own readout SDs. The objective
    pools the squared auditory and visual residuals over the sweep with equal
    weight; exact ties resolve to the smallest candidate. Raises
    :class:`LatticeBoundaryError` when the optimum sits on the lattice edge,
    which signals a too-narrow search range.
    """
    observer = readout_observer(params, p_common, grid)
    curve = oracle_sweep(observer, s_a=s_a, s_v_values=s_v_values,
                         n_samples=n_samples, seed=seed)
    if lattice is None:
        lattice = mu_lattice(c_from_gains(params.gain_a, params.gain_v))
    lattice = np.asarray(lattice, dtype=float)
    est_a, est_v = network_sweep_decodes(params, lattice, s_a=s_a,
                                         s_v_values=s_v_values, grid=grid)
    res_a = est_a - curve.est_a
    res_v = est_v - curve.est_v
    combined = np.sqrt(np.mean(np.concatenate([res_a ** 2, res_v ** 2], axis=1), axis=1))
    best = int(np.argmin(combined))
    if best in (0, lattice.size - 1):
        raise LatticeBoundaryError(
            f"best bias {lattice[best]:.2f} sits on the lattice boundary")
    return FitResult(mu=float(lattice[best]),
                     rmse_a=float(np.sqrt(np.mean(res_a[best] ** 2))),
                     rmse_v=float(np.sqrt(np.mean(res_v[best] ** 2))),
                     p_common=p_common)
