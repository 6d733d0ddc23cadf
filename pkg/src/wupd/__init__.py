"""Exponentially weighted Bayesian updating and dispersion/entropy analysis.

The package has five parts:

* :mod:`wupd.grid`        -- densities on discretized measure spaces: grids,
                             normalization, quadrature, the power transform,
                             entropy, surprisal, moments
* :mod:`wupd.updating`    -- weighted posteriors (scalar, per-observation,
                             and time-varying weights) over grid priors
* :mod:`wupd.dispersion`  -- monotone dispersion/concentration classification
                             and the structural checks the relation implies
* :mod:`wupd.families`    -- Beta/Normal/Pareto closed forms used as oracles
* :mod:`wupd.scenario`, :mod:`wupd.fitting`, :mod:`wupd.verification`,
  :mod:`wupd.cli`         -- scenario runner, weight estimation, randomized
                             verification, and the ``wupd`` command
"""

from .dispersion import (
    CrossingBounds,
    EntropyOrder,
    EntropyOrdering,
    ImplicationResult,
    RelationKind,
    RelationVerdict,
    classify_relation,
    crossing_bounds,
    entropy_ordering,
    verify_higher_highs,
    verify_max_dominance,
    verify_threshold_signs,
)
from .errors import (
    DivergentResultError,
    GridMismatchError,
    IndexOutOfRangeError,
    InsufficientDataError,
    InvalidConfigError,
    InvalidSearchBoxError,
    InvariantViolationError,
    LengthMismatchError,
    NonFiniteIntegralError,
    NonPositiveGammaError,
    NonPositiveValueError,
    NonPositiveWeightError,
    NotADispersionPairError,
    SupportMismatchError,
    WupdError,
)
from .families import (
    AnalyticFamily,
    BetaFamily,
    NormalKnownVar,
    ParetoFamily,
    analytic_moments_entropy,
    analytic_power,
    default_grid,
    pareto_power_integrable,
    to_grid,
    weighted_beta_bernoulli,
    weighted_normal_normal,
)
from .fitting import (
    FitResult,
    ReportedMeans,
    ReportedPosteriors,
    SearchBox,
    fit_weights,
)
from .grid import (
    GridDensity,
    GridKind,
    MomentSummary,
    SupportGrid,
    entropy,
    grids_equal,
    integrate,
    mode_points,
    moments,
    normalize,
    power_transform,
    surprisal,
)
from .scenario import ScenarioConfig, run_scenario
from .updating import (
    BeliefTrajectory,
    LikelihoodModel,
    WeightSchedule,
    bernoulli_model,
    normal_model,
    sequential_weighted_posterior,
    time_varying_posterior,
    weighted_posterior,
)
from .verification import VerificationReport, verify_suite

__all__ = [
    "AnalyticFamily",
    "BeliefTrajectory",
    "BetaFamily",
    "CrossingBounds",
    "DivergentResultError",
    "EntropyOrder",
    "EntropyOrdering",
    "FitResult",
    "GridDensity",
    "GridKind",
    "GridMismatchError",
    "ImplicationResult",
    "IndexOutOfRangeError",
    "InsufficientDataError",
    "InvalidConfigError",
    "InvalidSearchBoxError",
    "InvariantViolationError",
    "LengthMismatchError",
    "LikelihoodModel",
    "MomentSummary",
    "NonFiniteIntegralError",
    "NonPositiveGammaError",
    "NonPositiveValueError",
    "NonPositiveWeightError",
    "NormalKnownVar",
    "NotADispersionPairError",
    "ParetoFamily",
    "RelationKind",
    "RelationVerdict",
    "ReportedMeans",
    "ReportedPosteriors",
    "ScenarioConfig",
    "SearchBox",
    "SupportGrid",
    "SupportMismatchError",
    "VerificationReport",
    "WeightSchedule",
    "WupdError",
    "analytic_moments_entropy",
    "analytic_power",
    "bernoulli_model",
    "classify_relation",
    "crossing_bounds",
    "default_grid",
    "entropy",
    "entropy_ordering",
    "fit_weights",
    "grids_equal",
    "integrate",
    "mode_points",
    "moments",
    "normal_model",
    "normalize",
    "pareto_power_integrable",
    "power_transform",
    "run_scenario",
    "sequential_weighted_posterior",
    "surprisal",
    "time_varying_posterior",
    "to_grid",
    "verify_higher_highs",
    "verify_max_dominance",
    "verify_suite",
    "verify_threshold_signs",
    "weighted_beta_bernoulli",
    "weighted_normal_normal",
    "weighted_posterior",
]
