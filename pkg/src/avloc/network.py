"""Reconstruction layer, location decoding and the full forward pass.

The reconstruction layer projects pooled activity back through the same
weight matrices (adjoint direction), producing a smoothed, denoised copy of
the input pattern from which the final location estimates are decoded.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DEFAULT_GRID, MissingModalityError, NetworkParams, SpatialGrid
from .input_layer import InputActivity, StimulusEvent, input_for_event
from .pooling import (PoolingActivity, PoolingWeights, cached_weights,
                      divisive_normalize, pool_all)


@dataclass
class ReconstructionActivity:
    """Reconstructed input activity. The presence flags record which
    modalities were actually stimulated, so decoders can refuse to read out
    a channel that carries only cross-modal expectations."""

    rho_l: np.ndarray
    rho_r: np.ndarray
    rho_v: np.ndarray
    has_auditory: bool = True
    has_visual: bool = True


@dataclass
class NetworkOutput:
    """Everything produced by one forward pass. Estimates are present
    exactly for the modalities present in the stimulus event."""

    input: InputActivity
    pooling: PoolingActivity
    reconstruction: ReconstructionActivity
    est_a: float | None
    est_v: float | None


def reconstruct(pooling: PoolingActivity, weights: PoolingWeights,
                has_auditory: bool = True, has_visual: bool = True) -> ReconstructionActivity:
    """Reconstruction activity from normalized pooled activity.

    Each reconstruction unit i sums pooling unit j with the weight that
    connects input unit i to pooling unit j; activity enters on the pooling
    side, so the matrices act in the adjoint direction and the reconstruction
    keeps the orientation of the input profiles.
    """
    if not pooling.normalized:
        raise ValueError("normalize the pooling activity before reconstructing")
    return ReconstructionActivity(
        rho_l=weights.w_l @ pooling.r_a + weights.w_ml @ pooling.r_m,
        rho_r=weights.w_r @ pooling.r_a + weights.w_mr @ pooling.r_m,
        rho_v=weights.w_v @ pooling.r_v + weights.w_mv @ pooling.r_m,
        has_auditory=has_auditory,
        has_visual=has_visual,
    )


def argmax_center(values, grid: SpatialGrid = DEFAULT_GRID) -> float:
    """Center of the maximal unit; ties average, and an off-grid tie midpoint
    snaps to the tied center nearest azimuth zero."""
    v = np.asarray(values)
    tied = np.flatnonzero(v == v.max())
    c = float(grid.centers[tied].mean())
    rel = (c - float(grid.centers[0])) / grid.step
    if abs(rel - round(rel)) < 1e-9:
        return float(grid.centers[int(round(rel))])
    lo = float(grid.centers[int(np.floor(rel))])
    hi = float(grid.centers[int(np.ceil(rel))])
    return lo if abs(lo) <= abs(hi) else hi


def decode_visual(recon: ReconstructionActivity, grid: SpatialGrid = DEFAULT_GRID) -> float:
    """Visual location estimate: center of the maximally active visual
    reconstruction unit (place code)."""
    if not recon.has_visual:
        raise MissingModalityError("no visual stimulus was presented on this trial")
    return argmax_center(recon.rho_v, grid)


def decode_auditory(recon: ReconstructionActivity, grid: SpatialGrid = DEFAULT_GRID) -> float:
    """Auditory location estimate: center of the maximal element-wise product
    of the two auditory reconstructions, which sits at the half-maximum
    crossing of the opposing sigmoid profiles (rate code)."""
    if not recon.has_auditory:
        raise MissingModalityError("no auditory stimulus was presented on this trial")
    return argmax_center(recon.rho_r * recon.rho_l, grid)


def forward_pass(event: StimulusEvent, params: NetworkParams, adaptation=None,
                 noise: bool = False, rng: np.random.Generator | None = None,
                 grid: SpatialGrid = DEFAULT_GRID,
                 weights: PoolingWeights | None = None) -> NetworkOutput:
    """One pass through the network: input, pooling, normalization,
    reconstruction, and decoding of the modalities present in the event.
    Deterministic when ``noise`` is off."""
    if weights is None:
        weights = cached_weights(params, grid)
    inp = input_for_event(event, params, adaptation=adaptation, noise=noise,
                          rng=rng, grid=grid)
    pooling = divisive_normalize(pool_all(inp, weights, params.bias))
    recon = reconstruct(pooling, weights,
                        has_auditory=event.auditory is not None,
                        has_visual=event.visual is not None)
    est_a = decode_auditory(recon, grid) if event.auditory is not None else None
    est_v = decode_visual(recon, grid) if event.visual is not None else None
    return NetworkOutput(input=inp, pooling=pooling, reconstruction=recon,
                         est_a=est_a, est_v=est_v)
