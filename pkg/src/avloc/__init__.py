"""Neural network model of audiovisual spatial localization.

A three-layer population-code network that approximates Bayesian causal
inference for audiovisual localization and recalibrates its auditory input
weights from reconstruction error, together with the normative
causal-inference observer used to validate it.
"""

from .core import (ActivityOverflowError, DEFAULT_GRID, DegenerateLikelihoodError,
                   LatticeBoundaryError, MissingModalityError, NetworkParams,
                   ProfileClippedError, SimulationError, SpatialGrid, make_grid,
                   wrapped_distance)
from .input_layer import (InputActivity, StimulusEvent, apply_poisson_noise,
                          auditory_left_response, auditory_right_response,
                          input_for_event, visual_response)
from .pooling import (PoolingActivity, PoolingWeights, build_weights,
                      cached_weights, divisive_normalize, pool_all,
                      pool_multisensory, pool_unisensory_auditory,
                      pool_unisensory_visual, relatedness_index)
from .readout import LikelihoodSummary, gaussian_fit_rmse, profile_peak_and_width
from .network import (NetworkOutput, ReconstructionActivity, argmax_center,
                      decode_auditory, decode_visual, forward_pass, reconstruct)
from .causal_inference import (CausalEstimate, DisparityCurve, ObserverParams,
                               causal_estimate, disparity_sweep, mean_estimates)
from .recalibration import (AdaptationState, ScheduleStep, TrialSchedule,
                            adaptation_train, decay_adaptation, run_schedule,
                            train_with_probe, update_adaptation)
from .fitting import (FitResult, c_from_gains, fit_c_plane, fit_logit_curve,
                      fit_mu, mu_from_pcommon, mu_lattice, network_sweep_decodes,
                      oracle_sweep, readout_observer, readout_sds)

__version__ = "0.1.0"
