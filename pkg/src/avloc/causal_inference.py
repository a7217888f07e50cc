"""Normative Bayesian causal-inference observer for audiovisual localization.

Given noisy unisensory location samples, the observer weighs the hypothesis
that both came from one source against the hypothesis of two independent
sources, and model-averages the fused and segregated location estimates by
the posterior probability of a common cause. The posterior is computed over
a discretized uniform prior on source location; the location estimates
themselves use the standard Gaussian formulas, which a uniform prior leaves
untouched. Monte Carlo averages of these estimates are the reference curves
the network is compared against.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import math

import numpy as np
from scipy.special import expit, logsumexp

from .core import DegenerateLikelihoodError

# hypothesis locations for the common-cause posterior
DEFAULT_HYPOTHESES = np.arange(-90.0, 91.0, 1.0)

# samples farther than this many likelihood SDs from every hypothesis are rejected
MAX_OFFGRID_Z = 20.0


@dataclass(frozen=True)
class ObserverParams:
    """Likelihood widths, common-cause prior and hypothesis grid."""

    sigma_a: float
    sigma_v: float
    p_common: float
    hypotheses: np.ndarray = field(default_factory=lambda: DEFAULT_HYPOTHESES.copy())

    def __post_init__(self):
        if not (self.sigma_a > 0 and self.sigma_v > 0):
            raise ValueError("likelihood SDs must be positive")
        if not 0.0 <= self.p_common <= 1.0:
            raise ValueError("p_common must lie in [0, 1]")
        h = np.asarray(self.hypotheses, dtype=float)
        steps = np.diff(h)
        if h.size < 2 or np.any(steps <= 0) or not np.allclose(steps, steps[0]):
            raise ValueError("hypothesis grid must be uniform and increasing")
        object.__setattr__(self, "hypotheses", h)
        h.setflags(write=False)


@dataclass(frozen=True)
class CausalEstimate:
    """Posterior of a common cause plus fused, segregated and final
    (model-averaged) location estimates for one sample pair."""

    post_common: float
    fused: float
    seg_a: float
    seg_v: float
    est_a: float
    est_v: float


def _log_normal(x, locs, sigma):
    z = (x[:, None] - locs[None, :]) / sigma
    return -0.5 * z * z - math.log(sigma * math.sqrt(2.0 * math.pi))


def _batch_estimates(x_a: np.ndarray, x_v: np.ndarray, params: ObserverParams):
    """Vectorized model-averaged estimates for arrays of sample pairs.

    Likelihood sums run in log space with max subtraction, since density
    products underflow float64 beyond roughly 40 degrees of disparity.
    """
    s = params.hypotheses
    sa, sv, p = params.sigma_a, params.sigma_v, params.p_common

    if (np.min(np.abs(x_a[:, None] - s[None, :]), axis=1).max() > MAX_OFFGRID_Z * sa
            or np.min(np.abs(x_v[:, None] - s[None, :]), axis=1).max() > MAX_OFFGRID_Z * sv):
        raise DegenerateLikelihoodError(
            "a sensory sample lies far outside the hypothesis grid")

    log_na = _log_normal(np.asarray(x_a, dtype=float), s, sa)
    log_nv = _log_normal(np.asarray(x_v, dtype=float), s, sv)
    log_n = math.log(s.size)
    log_l1 = logsumexp(log_na + log_nv, axis=1) - log_n
    log_l2 = (logsumexp(log_na, axis=1) - log_n) + (logsumexp(log_nv, axis=1) - log_n)

    if p <= 0.0:
        post = np.zeros_like(log_l1)
    elif p >= 1.0:
        post = np.ones_like(log_l1)
    else:
        # logistic in the log posterior odds
        post = expit(math.log(p) - np.log1p(-p) + log_l1 - log_l2)

    w_a = sv ** 2 / (sa ** 2 + sv ** 2)
    fused = w_a * x_a + (1.0 - w_a) * x_v
    est_a = post * fused + (1.0 - post) * x_a
    est_v = post * fused + (1.0 - post) * x_v
    return post, fused, est_a, est_v


def causal_estimate(x_a: float, x_v: float, params: ObserverParams) -> CausalEstimate:
    """Full causal-inference readout for a single sample pair."""
    post, fused, est_a, est_v = _batch_estimates(
        np.array([float(x_a)]), np.array([float(x_v)]), params)
    return CausalEstimate(post_common=float(post[0]), fused=float(fused[0]),
                          seg_a=float(x_a), seg_v=float(x_v),
                          est_a=float(est_a[0]), est_v=float(est_v[0]))


def mean_estimates(s_a: float, s_v: float, params: ObserverParams,
                   n_samples: int = 10000, seed: int = 0) -> tuple[float, float]:
    """Monte Carlo means of the final estimates for true locations
    (``s_a``, ``s_v``).

    Samples are drawn from the unisensory likelihoods and are not truncated
    to the hypothesis grid. Deterministic for a given seed.
    """
    if n_samples < 1:
        raise ValueError("need at least one sample")
    rng = np.random.default_rng(seed)
    x_a = rng.normal(s_a, params.sigma_a, n_samples)
    x_v = rng.normal(s_v, params.sigma_v, n_samples)
    _, _, est_a, est_v = _batch_estimates(x_a, x_v, params)
    return float(est_a.mean()), float(est_v.mean())


@dataclass(frozen=True)
class DisparityCurve:
    """Mean estimates across a sweep of visual locations at fixed ``s_a``."""

    s_a: float
    s_v: np.ndarray
    est_a: np.ndarray
    est_v: np.ndarray


def disparity_sweep(s_a: float, s_v_values, params: ObserverParams,
                    n_samples: int = 10000, seed: int = 0) -> DisparityCurve:
    """Monte Carlo mean estimates for every visual location in the sweep.

    Each sweep point derives its own seed (base seed plus index), so points
    are reproducible independently of execution order.
    """
    s_v_values = np.asarray(s_v_values, dtype=float)
    est_a = np.empty(s_v_values.size)
    est_v = np.empty(s_v_values.size)
    for i, s_v in enumerate(s_v_values):
        est_a[i], est_v[i] = mean_estimates(s_a, float(s_v), params,
                                            n_samples=n_samples, seed=seed + i)
    return DisparityCurve(s_a=s_a, s_v=s_v_values, est_a=est_a, est_v=est_v)
