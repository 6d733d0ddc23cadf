"""Exponentially weighted posterior updating.

The core rule generalizes Bayes' rule by raising the likelihood to a positive
exponent ``beta`` and the prior to a positive exponent ``alpha`` before
renormalizing:

    posterior(theta) ~ likelihood(x | theta)**beta * prior(theta)**alpha

``alpha = beta = 1`` recovers standard Bayesian updating exactly.  Two
extensions are provided: per-observation likelihood weights (``beta_j`` for
the j-th observation), and weights that are functions of the number of
observations consumed.

All products are accumulated in log space and exponentiated after subtracting
the maximum log value, so long observation sequences cannot underflow the
posterior into zeros.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence, Union

import numpy as np

from .errors import (
    GridMismatchError,
    LengthMismatchError,
    NonFiniteIntegralError,
    NonPositiveWeightError,
)
from .grid import GridDensity, SupportGrid, entropy, grids_equal, normalize

# Exponentiated log posteriors are floored at the smallest positive normal
# float: it preserves strict positivity where the true value underflows, and
# contributes mass far below every tolerance in use.
_VALUE_FLOOR = float(np.finfo(float).tiny)


@dataclass(frozen=True)
class LikelihoodModel:
    """Observation model over a parameter grid.

    ``density_of(x, history, theta)`` must return strictly positive, finite
    likelihood values for the array of grid parameters ``theta``; ``history``
    is the tuple of observations seen before ``x`` (built-in models are
    i.i.d. and ignore it).  ``log_density_of``, when given, is used instead
    of ``log(density_of(...))`` for numerical headroom.
    """

    parameter_grid: SupportGrid
    density_of: Callable[[object, tuple, np.ndarray], np.ndarray]
    log_density_of: Callable[[object, tuple, np.ndarray], np.ndarray] | None = None

    def log_density(self, x, history: tuple) -> np.ndarray:
        theta = self.parameter_grid.points
        if self.log_density_of is not None:
            out = np.asarray(self.log_density_of(x, history, theta), dtype=float)
        else:
            vals = np.asarray(self.density_of(x, history, theta), dtype=float)
            if not np.all(vals > 0):
                raise NonFiniteIntegralError(
                    "likelihood values must be strictly positive"
                )
            out = np.log(vals)
        if not np.all(np.isfinite(out)):
            raise NonFiniteIntegralError("likelihood produced non-finite values")
        return out


def bernoulli_model(parameter_grid: SupportGrid) -> LikelihoodModel:
    """Bernoulli(theta) likelihood; observations are 0/1 (or truthy) values."""

    def density(x, history, theta):
        return np.where(x, theta, 1.0 - theta)

    def log_density(x, history, theta):
        return np.where(x, np.log(theta), np.log1p(-theta))

    return LikelihoodModel(parameter_grid, density, log_density)


def normal_model(parameter_grid: SupportGrid, obs_var: float) -> LikelihoodModel:
    """Normal(theta, obs_var) likelihood with known observation variance."""
    if not obs_var > 0:
        raise ValueError("observation variance must be > 0")
    log_norm = 0.5 * np.log(2.0 * np.pi * obs_var)

    def density(x, history, theta):
        return np.exp(-0.5 * (x - theta) ** 2 / obs_var - log_norm)

    def log_density(x, history, theta):
        return -0.5 * (x - theta) ** 2 / obs_var - log_norm

    return LikelihoodModel(parameter_grid, density, log_density)


def _realize_weight(value, t: int, name: str) -> float:
    w = float(value(t)) if callable(value) else float(value)
    if not w > 0:
        raise NonPositiveWeightError(f"{name} must be > 0, got {w!r} at t={t}")
    return w


@dataclass(frozen=True)
class WeightSchedule:
    """Prior weight and per-observation likelihood weights.

    ``alpha`` is a positive scalar or a function of the observation count.
    ``betas`` is a positive scalar (applied to every observation), an
    explicit sequence with one weight per observation, or a function of the
    1-based observation index.
    """

    alpha: Union[float, Callable[[int], float]] = 1.0
    betas: Union[float, Sequence[float], Callable[[int], float]] = 1.0

    def alpha_at(self, t: int) -> float:
        return _realize_weight(self.alpha, t, "alpha")

    def beta_at(self, j: int) -> float:
        if callable(self.betas):
            return _realize_weight(self.betas, j, "beta")
        if np.ndim(self.betas) == 0:
            return _realize_weight(self.betas, j, "beta")
        seq = np.asarray(self.betas, dtype=float)
        if not 1 <= j <= seq.size:
            raise LengthMismatchError(
                f"no beta for observation {j} (schedule has {seq.size})"
            )
        return _realize_weight(seq[j - 1], j, "beta")

    def realized_betas(self, count: int) -> tuple:
        if not callable(self.betas) and np.ndim(self.betas) > 0:
            seq = np.asarray(self.betas, dtype=float)
            if seq.size != count:
                raise LengthMismatchError(
                    f"{seq.size} betas for {count} observations"
                )
        return tuple(self.beta_at(j) for j in range(1, count + 1))


@dataclass(frozen=True)
class BeliefTrajectory:
    """Posterior sequence produced by sequential weighted updating.

    ``posteriors[0]`` is the (alpha-weighted, renormalized) prior before any
    observation; ``posteriors[k]`` is the belief after consuming the first
    ``k`` observations, so ``len(posteriors) == len(observations) + 1``.
    ``entropies`` aligns with ``posteriors``.
    """

    posteriors: tuple
    entropies: tuple
    observations: tuple
    alphas: tuple = field(default=())
    betas: tuple = field(default=())

    def __post_init__(self):
        if len(self.posteriors) != len(self.observations) + 1:
            raise LengthMismatchError(
                f"{len(self.posteriors)} posteriors for "
                f"{len(self.observations)} observations"
            )
        if len(self.entropies) != len(self.posteriors):
            raise LengthMismatchError("entropies must align with posteriors")

    @property
    def final(self) -> GridDensity:
        return self.posteriors[-1]


def _check_grid(prior: GridDensity, model: LikelihoodModel) -> None:
    if not grids_equal(prior.grid, model.parameter_grid):
        raise GridMismatchError("prior and likelihood model use different grids")


def _posterior_from_log(log_unnorm: np.ndarray, grid: SupportGrid) -> GridDensity:
    raw = np.exp(log_unnorm - np.max(log_unnorm))
    return normalize(np.maximum(raw, _VALUE_FLOOR), grid)


def weighted_posterior(
    prior: GridDensity,
    model: LikelihoodModel,
    x,
    alpha: float,
    beta: float,
) -> GridDensity:
    """One-step weighted posterior for a single observation.

    Returns the normalized density proportional to
    ``likelihood(x|theta)**beta * prior(theta)**alpha``.  With
    ``alpha = beta = 1`` this is exactly the Bayes posterior.
    """
    _check_grid(prior, model)
    a = _realize_weight(alpha, 1, "alpha")
    b = _realize_weight(beta, 1, "beta")
    log_post = b * model.log_density(x, ()) + a * np.log(prior.values)
    return _posterior_from_log(log_post, prior.grid)


def sequential_weighted_posterior(
    prior: GridDensity,
    model: LikelihoodModel,
    observations: Sequence,
    schedule: WeightSchedule,
) -> BeliefTrajectory:
    """Sequential updating with one likelihood weight per observation.

    The belief after ``k`` observations is proportional to

        prior**alpha * prod_{j<=k} likelihood(x_j | history_j)**beta_j

    i.e. the prior weight is applied once, not compounded per step.  With all
    weights equal to one this reproduces standard sequential Bayes, and the
    final entry always equals the batch computation of the weighted product.

    A callable prior weight is realized at the prefix count for each
    intermediate entry (entry k uses ``alpha(k)``); a scalar applies
    throughout.
    """
    _check_grid(prior, model)
    obs = tuple(observations)
    betas = schedule.realized_betas(len(obs))
    alphas = tuple(schedule.alpha_at(k) for k in range(len(obs) + 1))

    log_prior = np.log(prior.values)
    log_lik_acc = np.zeros(len(prior))
    posteriors = [_posterior_from_log(alphas[0] * log_prior, prior.grid)]
    for j, x in enumerate(obs, start=1):
        log_lik_acc = log_lik_acc + betas[j - 1] * model.log_density(x, obs[: j - 1])
        posteriors.append(
            _posterior_from_log(alphas[j] * log_prior + log_lik_acc, prior.grid)
        )
    return BeliefTrajectory(
        posteriors=tuple(posteriors),
        entropies=tuple(entropy(p) for p in posteriors),
        observations=obs,
        alphas=alphas,
        betas=betas,
    )


def time_varying_posterior(
    prior: GridDensity,
    model: LikelihoodModel,
    observations: Sequence,
    alpha_of_t: Callable[[int], float],
    beta_of_t: Callable[[int], float],
) -> GridDensity:
    """Batch weighted posterior with weights depending on the step count.

    The whole history enters through its joint likelihood raised to
    ``beta(t)``, with ``t = len(observations)``:

        posterior ~ joint_likelihood(history | theta)**beta(t) * prior**alpha(t)

    Each ``t`` is recomputed from scratch; past observations are re-weighted
    by the current ``beta(t)``, which is the literal batch reading of a
    time-varying weight.
    """
    _check_grid(prior, model)
    obs = tuple(observations)
    t = len(obs)
    alpha = _realize_weight(alpha_of_t, t, "alpha(t)")
    joint = np.zeros(len(prior))
    for j, x in enumerate(obs):
        joint = joint + model.log_density(x, obs[:j])
    if t > 0:
        beta = _realize_weight(beta_of_t, t, "beta(t)")
        log_post = beta * joint + alpha * np.log(prior.values)
    else:
        log_post = alpha * np.log(prior.values)
    return _posterior_from_log(log_post, prior.grid)
