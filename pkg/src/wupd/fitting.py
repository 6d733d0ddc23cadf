"""Recover updating weights from an observed belief trajectory.

Given a prior, a likelihood family, the observation sequence, and the beliefs
someone reported after each observation, estimate the prior weight and the
likelihood weight they were implicitly using.  Two report forms are accepted:

* full per-step posteriors in conjugate-parameter form: the criterion is the
  expected log-density of the model-implied posterior under each reported
  posterior, computed exactly with digamma/log-beta terms.  Up to a constant
  in the weights this equals minus the KL divergence from the report to the
  model, so trajectories generated by the model are recovered exactly (to
  search resolution).
* per-step point beliefs (posterior means): least squares on the means; the
  reported ``log_likelihood`` is the Gaussian-score equivalent
  ``-0.5 * sum((model_mean - report)**2)``.

Point-belief reports carry strictly less information.  In particular, for a
symmetric Beta prior (a0 == b0) the map (alpha, beta) -> (c*alpha + c - 1,
c*beta) leaves every posterior mean unchanged for any c > 0, so means-only
data identifies the weights only up to that one-parameter family; the tie
rule then picks the representative nearest (1, 1).  Full posterior reports,
or an asymmetric prior, restore point identification.

The search is a coarse lattice over the box followed by local lattice
refinements around the incumbent.  Ties (criterion within 1e-9) break toward
the unweighted point (1, 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np
from scipy.optimize import minimize
from scipy.special import betaln, digamma

from .errors import InsufficientDataError, InvalidSearchBoxError
from .families import BetaFamily, NormalKnownVar

TIE_BREAK_TOL = 1e-9


@dataclass(frozen=True)
class ReportedMeans:
    """One reported posterior mean per observation step."""

    values: tuple


@dataclass(frozen=True)
class ReportedPosteriors:
    """One reported conjugate parameter pair per observation step.

    Beta reports are (a, b); Normal reports are (mean, variance).
    """

    parameters: tuple


Reports = Union[ReportedMeans, ReportedPosteriors]


@dataclass(frozen=True)
class FitResult:
    alpha_hat: float
    beta_hat: float
    log_likelihood: float
    grid_resolution_used: str


@dataclass(frozen=True)
class SearchBox:
    alpha_min: float
    alpha_max: float
    beta_min: float
    beta_max: float

    def __post_init__(self):
        ok = (
            0 < self.alpha_min < self.alpha_max
            and 0 < self.beta_min < self.beta_max
        )
        if not ok:
            raise InvalidSearchBoxError(
                "search box bounds must be positive with min < max, got "
                f"alpha [{self.alpha_min}, {self.alpha_max}], "
                f"beta [{self.beta_min}, {self.beta_max}]"
            )

    def contains(self, alpha: float, beta: float) -> bool:
        return (
            self.alpha_min <= alpha <= self.alpha_max
            and self.beta_min <= beta <= self.beta_max
        )


DEFAULT_SEARCH_BOX = SearchBox(0.2, 3.0, 0.2, 3.0)


def _beta_posterior_criterion(prior: BetaFamily, obs, reports: ReportedPosteriors):
    obs = np.asarray(obs, dtype=float)
    s = np.cumsum(obs)
    f = np.cumsum(1.0 - obs)
    params = np.asarray(reports.parameters, dtype=float)
    a_rep, b_rep = params[:, 0], params[:, 1]
    dg_sum = digamma(a_rep + b_rep)
    e_log_t = digamma(a_rep) - dg_sum
    e_log_1mt = digamma(b_rep) - dg_sum
    a0m1, b0m1 = prior.a - 1.0, prior.b - 1.0

    def criterion(alpha: float, beta: float) -> float:
        a = beta * s + alpha * a0m1 + 1.0
        b = beta * f + alpha * b0m1 + 1.0
        if np.any(a <= 0) or np.any(b <= 0):
            return -math.inf
        terms = -betaln(a, b) + (a - 1.0) * e_log_t + (b - 1.0) * e_log_1mt
        return float(np.sum(terms))

    return criterion


def _beta_means_criterion(prior: BetaFamily, obs, reports: ReportedMeans):
    obs = np.asarray(obs, dtype=float)
    s = np.cumsum(obs)
    f = np.cumsum(1.0 - obs)
    target = np.asarray(reports.values, dtype=float)
    a0m1, b0m1 = prior.a - 1.0, prior.b - 1.0

    def criterion(alpha: float, beta: float) -> float:
        a = beta * s + alpha * a0m1 + 1.0
        b = beta * f + alpha * b0m1 + 1.0
        if np.any(a <= 0) or np.any(b <= 0):
            return -math.inf
        means = a / (a + b)
        return float(-0.5 * np.sum((means - target) ** 2))

    return criterion


def _normal_posterior_criterion(
    prior: NormalKnownVar, like_var: float, obs, reports: ReportedPosteriors
):
    obs = np.asarray(obs, dtype=float)
    cum_x = np.cumsum(obs)
    t = np.arange(1, obs.size + 1, dtype=float)
    params = np.asarray(reports.parameters, dtype=float)
    m_rep, v_rep = params[:, 0], params[:, 1]

    def criterion(alpha: float, beta: float) -> float:
        precision = alpha / prior.var + beta * t / like_var
        v = 1.0 / precision
        m = (alpha * prior.mu / prior.var + beta * cum_x / like_var) * v
        terms = -0.5 * np.log(2.0 * math.pi * v) - (v_rep + (m_rep - m) ** 2) / (2.0 * v)
        return float(np.sum(terms))

    return criterion


def _normal_means_criterion(
    prior: NormalKnownVar, like_var: float, obs, reports: ReportedMeans
):
    obs = np.asarray(obs, dtype=float)
    cum_x = np.cumsum(obs)
    t = np.arange(1, obs.size + 1, dtype=float)
    target = np.asarray(reports.values, dtype=float)

    def criterion(alpha: float, beta: float) -> float:
        precision = alpha / prior.var + beta * t / like_var
        m = (alpha * prior.mu / prior.var + beta * cum_x / like_var) / precision
        return float(-0.5 * np.sum((m - target) ** 2))

    return criterion


def _build_criterion(prior, likelihood, obs, reports):
    if isinstance(prior, BetaFamily):
        if likelihood != "bernoulli":
            raise ValueError("beta priors pair with the bernoulli likelihood")
        if isinstance(reports, ReportedPosteriors):
            return _beta_posterior_criterion(prior, obs, reports)
        return _beta_means_criterion(prior, obs, reports)
    if isinstance(prior, NormalKnownVar):
        like_var = float(likelihood)
        if isinstance(reports, ReportedPosteriors):
            return _normal_posterior_criterion(prior, like_var, obs, reports)
        return _normal_means_criterion(prior, like_var, obs, reports)
    raise TypeError(f"unsupported prior {prior!r}")


def _lattice_best(criterion, alphas, betas, extra=()):
    candidates = [(a, b) for a in alphas for b in betas]
    candidates.extend(extra)
    best = (-math.inf, math.inf, 1.0, 1.0)
    for a, b in candidates:
        value = criterion(a, b)
        if not np.isfinite(value):
            continue
        dist = math.hypot(a - 1.0, b - 1.0)
        # higher criterion wins; near-ties break toward (1, 1)
        if value > best[0] + TIE_BREAK_TOL or (
            value > best[0] - TIE_BREAK_TOL and dist < best[1]
        ):
            best = (value, dist, a, b)
    return best


def fit_weights(
    observations: Sequence,
    prior: Union[BetaFamily, NormalKnownVar],
    likelihood,
    reports: Reports,
    search_box: SearchBox = DEFAULT_SEARCH_BOX,
    lattice_size: int = 21,
    refinement_rounds: int = 4,
) -> FitResult:
    """Grid-search the weight pair best explaining the reported beliefs.

    ``likelihood`` is the string ``"bernoulli"`` for Beta priors or the known
    observation variance for Normal priors.  Reports carry one entry per
    observation.  Needs at least two observations.

    When the prior carries no information (uniform Beta(1,1)), the prior
    weight is unidentifiable; the tie-break then pins it at 1.
    """
    obs = tuple(observations)
    if len(obs) < 2:
        raise InsufficientDataError(
            f"need at least 2 observations to fit weights, got {len(obs)}"
        )
    n_reports = (
        len(reports.values)
        if isinstance(reports, ReportedMeans)
        else len(reports.parameters)
    )
    if n_reports != len(obs):
        raise InsufficientDataError(
            f"{n_reports} reports for {len(obs)} observations"
        )
    criterion = _build_criterion(prior, likelihood, obs, reports)

    a_lo, a_hi = search_box.alpha_min, search_box.alpha_max
    b_lo, b_hi = search_box.beta_min, search_box.beta_max
    value = -math.inf
    a_best = b_best = 1.0
    spacing = max(a_hi - a_lo, b_hi - b_lo) / (lattice_size - 1)
    # the unweighted point is always a candidate so ties can resolve onto it
    extra = [(1.0, 1.0)] if search_box.contains(1.0, 1.0) else []
    for round_idx in range(refinement_rounds + 1):
        alphas = np.linspace(a_lo, a_hi, lattice_size)
        betas = np.linspace(b_lo, b_hi, lattice_size)
        value, _, a_best, b_best = _lattice_best(criterion, alphas, betas, extra)
        if not np.isfinite(value):
            raise InvalidSearchBoxError(
                "no feasible weight pair in the search box: the weighted "
                "update diverges at every lattice candidate"
            )
        spacing = max(alphas[1] - alphas[0], betas[1] - betas[0])
        if round_idx == refinement_rounds:
            break
        half = 2.0 * spacing
        a_lo = max(search_box.alpha_min, a_best - half)
        a_hi = min(search_box.alpha_max, a_best + half)
        b_lo = max(search_box.beta_min, b_best - half)
        b_hi = min(search_box.beta_max, b_best + half)

    # simplex polish from the lattice incumbent; least-squares-on-means
    # surfaces form narrow curved valleys that pure lattice refinement can
    # stall in, and the polish is deterministic
    polish = minimize(
        lambda p: -criterion(p[0], p[1]),
        x0=np.array([a_best, b_best]),
        method="Nelder-Mead",
        bounds=[
            (search_box.alpha_min, search_box.alpha_max),
            (search_box.beta_min, search_box.beta_max),
        ],
        options={"xatol": 1e-8, "fatol": 1e-12, "maxiter": 2000},
    )
    if np.isfinite(polish.fun) and -polish.fun > value + TIE_BREAK_TOL:
        value = float(-polish.fun)
        a_best, b_best = float(polish.x[0]), float(polish.x[1])

    # final tie-break over axis projections: when the criterion is flat in a
    # weight (e.g. a flat prior leaves alpha undetermined), the projected
    # candidate ties and sits closer to (1, 1), so it wins
    finalists = [(a_best, b_best)]
    if search_box.contains(1.0, b_best):
        finalists.append((1.0, b_best))
    if search_box.contains(a_best, 1.0):
        finalists.append((a_best, 1.0))
    if search_box.contains(1.0, 1.0):
        finalists.append((1.0, 1.0))
    value, _, a_best, b_best = _lattice_best(criterion, [], [], extra=finalists)

    description = (
        f"{lattice_size}x{lattice_size} lattice over "
        f"[{search_box.alpha_min}, {search_box.alpha_max}] x "
        f"[{search_box.beta_min}, {search_box.beta_max}], "
        f"{refinement_rounds} refinement rounds (final spacing {spacing:.3e}) "
        f"plus simplex polish"
    )
    return FitResult(
        alpha_hat=float(a_best),
        beta_hat=float(b_best),
        log_likelihood=float(value),
        grid_resolution_used=description,
    )
