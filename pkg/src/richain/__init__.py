"""Exactly soluble dynamics of an oscillator refreshed by a chain of modes.

One distinguished mode meets a sequence of identically prepared chain
modes, one per time slot, through a bilinear exchange coupling.  Every
dynamical quantity of interest admits a closed form: the propagator is a
product of two-mode rotations, quasi-free states stay quasi-free, and
the entropies reduce to scalar recursions.  A truncated-Fock brute-force
oracle cross-checks the closed forms on small chains.
"""

from .kernel import (
    HypothesisReport,
    MatrixExpCheck,
    ModelParams,
    PropagatedVector,
    StepMatrix,
    StepScalars,
    matrix_exponential_check,
    normal_modes,
    propagate_vector,
    step_matrix,
    step_scalars,
    validate_hypotheses,
)
from .quasifree import (
    EntropyReport,
    RankOneQuasiFreeState,
    beta_from_x,
    char_fn,
    gibbs_x,
    mode_entropy,
    occupation,
    partition_function,
    sigma,
    state_entropy,
)
from .dynamics import (
    EvolvedState,
    SubsystemSelector,
    effective_beta_S,
    effective_beta_Sm,
    entropy_production_limit,
    evolve_state,
    reduced_char_fn,
    relative_entropy,
    total_entropy,
    window_entropy,
    window_overlap_norm_sq,
    window_state,
)
from .experiments import (
    ChainStateSpec,
    LimitSchedule,
    MomentReport,
    RunRecord,
    convergence_study,
    moment_hypothesis_check,
    short_time_limit_run,
    sweep,
)

__version__ = "0.1.0"

__all__ = [
    "ModelParams", "StepScalars", "StepMatrix", "PropagatedVector",
    "MatrixExpCheck", "HypothesisReport", "step_scalars", "step_matrix",
    "normal_modes", "matrix_exponential_check", "propagate_vector",
    "validate_hypotheses",
    "RankOneQuasiFreeState", "EntropyReport", "gibbs_x", "beta_from_x",
    "sigma", "mode_entropy", "occupation", "char_fn", "state_entropy",
    "partition_function",
    "EvolvedState", "SubsystemSelector", "evolve_state", "reduced_char_fn",
    "effective_beta_S", "effective_beta_Sm", "total_entropy",
    "relative_entropy", "entropy_production_limit", "window_state",
    "window_overlap_norm_sq", "window_entropy",
    "LimitSchedule", "ChainStateSpec", "MomentReport", "RunRecord",
    "moment_hypothesis_check", "short_time_limit_run", "convergence_study",
    "sweep",
    "__version__",
]
