"""Input-layer population responses to auditory and visual stimuli.

The auditory population rate-codes azimuth with two mirror-image sigmoid
subpopulations; the visual population place-codes it with Gaussian tuning.
Optional Poisson noise models trial-to-trial spiking variability.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DEFAULT_GRID, NetworkParams, SpatialGrid, wrapped_distance


@dataclass(frozen=True)
class StimulusEvent:
    """One audiovisual presentation; either modality may be absent."""

    auditory: float | None = None
    visual: float | None = None

    def __post_init__(self):
        if self.auditory is None and self.visual is None:
            raise ValueError("a stimulus event needs at least one modality")


@dataclass
class InputActivity:
    """Input-layer rates: left/right auditory subpopulations and the visual
    population. An absent modality is all zeros."""

    theta_l: np.ndarray
    theta_r: np.ndarray
    theta_v: np.ndarray


def auditory_left_response(s_a: float, params: NetworkParams, alpha=None,
                           grid: SpatialGrid = DEFAULT_GRID) -> np.ndarray:
    """Rates of the leftward-tuned auditory units for a sound at ``s_a``.

    Each unit is a falling sigmoid of stimulus azimuth centered on its
    preferred location, reaching half its peak rate there. ``alpha`` is the
    per-unit adaptive input weight (1 everywhere when not adapting).
    """
    a = 1.0 if alpha is None else np.asarray(alpha, dtype=float)
    return a * params.gain_a / (1.0 + np.exp((s_a - grid.centers) / params.rise))


def auditory_right_response(s_a: float, params: NetworkParams, alpha=None,
                            grid: SpatialGrid = DEFAULT_GRID) -> np.ndarray:
    """Mirror image of :func:`auditory_left_response`: rates rise for sounds
    to the right of each unit's center."""
    a = 1.0 if alpha is None else np.asarray(alpha, dtype=float)
    return a * params.gain_a / (1.0 + np.exp(-(s_a - grid.centers) / params.rise))


def visual_response(s_v: float, params: NetworkParams,
                    grid: SpatialGrid = DEFAULT_GRID) -> np.ndarray:
    """Gaussian-tuned visual rates, using wrap-around distance so wide tuning
    curves are not clipped at the edges of the azimuth range. Visual inputs
    carry no adaptive weight."""
    d = wrapped_distance(s_v, grid.centers, grid.length)
    return params.gain_v * np.exp(-(d ** 2) / (2.0 * params.width ** 2))


def apply_poisson_noise(activity: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Replace each rate with an independent Poisson draw of that mean."""
    return rng.poisson(np.asarray(activity)).astype(float)


def input_for_event(event: StimulusEvent, params: NetworkParams, adaptation=None,
                    noise: bool = False, rng: np.random.Generator | None = None,
                    grid: SpatialGrid = DEFAULT_GRID) -> InputActivity:
    """Input-layer activity for one stimulus event.

    ``adaptation`` supplies the per-unit auditory weights (anything with
    ``alpha_l`` / ``alpha_r`` arrays); when omitted all weights are 1. With
    ``noise`` the rates are replaced by Poisson draws, in the fixed order
    left, right, visual, so a given seed reproduces a trial exactly.
    """
    alpha_l = adaptation.alpha_l if adaptation is not None else None
    alpha_r = adaptation.alpha_r if adaptation is not None else None
    zeros = np.zeros(grid.n)
    if event.auditory is not None:
        theta_l = auditory_left_response(event.auditory, params, alpha_l, grid)
        theta_r = auditory_right_response(event.auditory, params, alpha_r, grid)
    else:
        theta_l, theta_r = zeros, zeros.copy()
    theta_v = visual_response(event.visual, params, grid) if event.visual is not None else zeros.copy()
    if noise:
        if rng is None:
            raise ValueError("noise=True requires a seeded rng")
        theta_l = apply_poisson_noise(theta_l, rng)
        theta_r = apply_poisson_noise(theta_r, rng)
        theta_v = apply_poisson_noise(theta_v, rng)
    return InputActivity(theta_l=theta_l, theta_r=theta_r, theta_v=theta_v)
