"""Spatial grid, network parameters and shared numeric guards."""

from __future__ import annotations

from dataclasses import dataclass
import numpy as np

# exp() arguments above this overflow float64; default parameters stay well below
EXP_OVERFLOW = 700.0


class SimulationError(Exception):
    """Base class for numeric failures raised while running the model."""


class ActivityOverflowError(SimulationError):
    """A pooled membrane potential exceeds the exp() range of float64."""


class MissingModalityError(SimulationError):
    """An operation required a stimulus modality that was not presented."""


class DegenerateLikelihoodError(SimulationError):
    """A sensory sample lies so far outside the hypothesis grid that the
    likelihood carries no usable mass."""


class ProfileClippedError(SimulationError):
    """An activity profile is too wide for the grid; a half-maximum crossing
    falls outside the covered range."""


class LatticeBoundaryError(SimulationError):
    """A lattice search terminated on the boundary of its search range."""


def wrapped_distance(a, b, length):
    """Shortest distance between two azimuths on a circle of circumference
    ``length`` degrees.

    Accepts scalars or arrays with broadcasting. The result is symmetric in
    the two positions and never exceeds ``length / 2``.
    """
    r = np.abs(np.asarray(a, dtype=float) - b) % length
    return np.minimum(r, length - r)


@dataclass(frozen=True)
class SpatialGrid:
    """Uniformly spaced unit centers covering the azimuth range, treated as a
    circle of circumference ``length`` for all wrap-around distances."""

    centers: np.ndarray
    length: float

    def __post_init__(self):
        c = np.asarray(self.centers, dtype=float)
        if c.ndim != 1 or c.size < 2:
            raise ValueError("grid needs a 1-d array of at least two centers")
        steps = np.diff(c)
        if np.any(steps <= 0) or not np.allclose(steps, steps[0]):
            raise ValueError("grid centers must be strictly increasing and uniformly spaced")
        if self.length <= 0:
            raise ValueError("wrap length must be positive")
        object.__setattr__(self, "centers", c)
        c.setflags(write=False)

    @property
    def n(self) -> int:
        return self.centers.size

    @property
    def step(self) -> float:
        return float(self.centers[1] - self.centers[0])

    def distance(self, a, b):
        """Wrap-around distance between azimuths on this grid's circle."""
        return wrapped_distance(a, b, self.length)


def make_grid(n: int = 301, lo: float = -150.0, hi: float = 150.0) -> SpatialGrid:
    """Build a uniform grid of ``n`` centers from ``lo`` to ``hi`` inclusive.

    The wrap circumference is ``n * step`` so that the gap between the two
    end centers counts as a single step when wrapping around.
    """
    if n < 2:
        raise ValueError("need at least two units")
    if hi <= lo:
        raise ValueError("hi must exceed lo")
    step = (hi - lo) / (n - 1)
    return SpatialGrid(centers=np.linspace(lo, hi, n), length=n * step)


DEFAULT_GRID = make_grid()


@dataclass(frozen=True)
class NetworkParams:
    """Tuning, gain and weight-scaling parameters of the network.

    gain_a, gain_v   peak input rates of the auditory / visual populations
    rise             auditory sigmoid rise constant, degrees
    width            visual Gaussian tuning width, degrees
    scale_a, scale_v weight scales of the unisensory pooling projections
    scale_ma         auditory weight scale of the multisensory projection
    scale_mv         visual weight scale of the multisensory projection
    bias             constant drive to the multisensory pool, encoding prior
                     relatedness of the two modalities
    """

    gain_a: float = 140.0
    gain_v: float = 80.0
    rise: float = 20.0
    width: float = 20.0
    scale_a: float = 2.0
    scale_v: float = 5.0
    scale_ma: float = 1.0
    scale_mv: float = 2.0
    bias: float = 10.5

    def __post_init__(self):
        for name in ("gain_a", "gain_v", "rise", "width",
                     "scale_a", "scale_v", "scale_ma", "scale_mv"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
