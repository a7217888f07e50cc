"""Unsupervised recalibration of auditory input weights.

On every stimulated second the per-unit auditory input weights move along the
normalized reconstruction error, treating the reconstruction as the template
the input should have produced; on silent seconds they decay back toward 1.
Running a schedule of audiovisual and probe trials reproduces the
ventriloquism aftereffect, its accumulation and its decay.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .core import DEFAULT_GRID, MissingModalityError, NetworkParams, SpatialGrid
from .input_layer import InputActivity, StimulusEvent
from .network import NetworkOutput, ReconstructionActivity, forward_pass
from .pooling import cached_weights


@dataclass(frozen=True)
class AdaptationState:
    """Per-unit auditory input weights, adaptation rates and a 1 s trial clock.

    Weights start at 1 and stay positive under the protocols modeled here.
    ``rate`` scales the error-driven update on stimulated seconds; ``decay``
    is the fixed step back toward 1 on silent seconds.
    """

    alpha_l: np.ndarray
    alpha_r: np.ndarray
    rate: float = 0.65
    decay: float = 0.009
    clock: int = 0

    @classmethod
    def initial(cls, grid: SpatialGrid = DEFAULT_GRID, rate: float = 0.65,
                decay: float = 0.009) -> "AdaptationState":
        return cls(alpha_l=np.ones(grid.n), alpha_r=np.ones(grid.n),
                   rate=rate, decay=decay)


def _subpop_update(alpha, theta, rho, rate):
    peak_in = float(theta.max())
    if peak_in <= 0:
        raise MissingModalityError(
            "adaptation update needs auditory drive in both subpopulations")
    t = theta / peak_in
    r = rho / float(rho.max())
    return alpha + rate * t * (r - t)


def update_adaptation(state: AdaptationState, inp: InputActivity,
                      recon: ReconstructionActivity) -> AdaptationState:
    """One stimulated second: nudge each weight along the reconstruction error.

    Each auditory subpopulation is updated against its own reconstruction,
    with input and reconstruction max-normalized within that subpopulation
    (the two are distinct channels with distinct reconstructions). Visual
    inputs carry no adaptive weights. Returns a new state; the trial clock
    advances by one second.
    """
    return replace(
        state,
        alpha_l=_subpop_update(state.alpha_l, inp.theta_l, recon.rho_l, state.rate),
        alpha_r=_subpop_update(state.alpha_r, inp.theta_r, recon.rho_r, state.rate),
        clock=state.clock + 1,
    )


def decay_adaptation(state: AdaptationState) -> AdaptationState:
    """One silent second: every weight steps toward 1 by the decay rate,
    landing exactly on 1 when within one step (no oscillation)."""

    def toward_one(alpha):
        out = alpha.copy()
        over = out > 1.0 + state.decay
        under = out < 1.0 - state.decay
        out[over] -= state.decay
        out[under] += state.decay
        out[~(over | under)] = 1.0
        return out

    return replace(state, alpha_l=toward_one(state.alpha_l),
                   alpha_r=toward_one(state.alpha_r), clock=state.clock + 1)


@dataclass(frozen=True)
class TrialSchedule:
    """One entry per second: a stimulus event or None for no stimulation.
    ``probes`` marks the indices whose decoded estimates are the measurements
    of interest (probe trials are ordinary stimuli and adapt as such)."""

    entries: tuple
    probes: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        object.__setattr__(self, "probes", tuple(self.probes))


@dataclass(frozen=True)
class ScheduleStep:
    """Record of one scheduled second: the event (None for silence), decoded
    estimates where applicable, and a snapshot of the weights afterwards."""

    t: int
    event: StimulusEvent | None
    est_a: float | None
    est_v: float | None
    is_probe: bool
    alpha_l: np.ndarray
    alpha_r: np.ndarray


def run_schedule(schedule: TrialSchedule, params: NetworkParams,
                 adaptation: AdaptationState | None = None, noise: bool = False,
                 seed: int | None = None,
                 grid: SpatialGrid = DEFAULT_GRID) -> list[ScheduleStep]:
    """Run a trial schedule second by second, threading the adaptation state.

    Stimulated seconds run a forward pass and then update the weights from
    its reconstruction error (visual-only events leave the auditory weights
    untouched); silent seconds decay the weights. Strictly sequential within
    one schedule; independent schedules are safe to run in parallel.
    """
    state = adaptation if adaptation is not None else AdaptationState.initial(grid)
    rng = np.random.default_rng(seed) if noise else None
    weights = cached_weights(params, grid)
    steps: list[ScheduleStep] = []
    for t, event in enumerate(schedule.entries):
        if event is None:
            state = decay_adaptation(state)
            steps.append(ScheduleStep(t, None, None, None, t in schedule.probes,
                                      state.alpha_l.copy(), state.alpha_r.copy()))
            continue
        out: NetworkOutput = forward_pass(event, params, adaptation=state,
                                          noise=noise, rng=rng, grid=grid,
                                          weights=weights)
        if event.auditory is not None:
            state = update_adaptation(state, out.input, out.reconstruction)
        else:
            state = replace(state, clock=state.clock + 1)
        steps.append(ScheduleStep(t, event, out.est_a, out.est_v,
                                  t in schedule.probes,
                                  state.alpha_l.copy(), state.alpha_r.copy()))
    return steps


def adaptation_train(n_reps: int, s_a: float = 0.0, s_v: float = 8.0) -> list:
    """Repeated audiovisual presentations one per second, with a silent
    second between consecutive presentations."""
    event = StimulusEvent(auditory=s_a, visual=s_v)
    entries: list = []
    for k in range(n_reps):
        if k:
            entries.append(None)
        entries.append(event)
    return entries


def train_with_probe(n_reps: int, delay: int, probe_loc: float = 0.0,
                     s_a: float = 0.0, s_v: float = 8.0) -> TrialSchedule:
    """An adaptation train followed by ``delay`` silent seconds and a single
    auditory-only probe whose decoded location measures the aftereffect."""
    entries = adaptation_train(n_reps, s_a=s_a, s_v=s_v)
    entries.extend([None] * delay)
    entries.append(StimulusEvent(auditory=probe_loc))
    return TrialSchedule(entries=entries, probes=(len(entries) - 1,))
