"""Closed-form distribution families used as oracles for the grid engine.

Three families are closed under the power transform and under exponentially
weighted updating, which makes them ideal cross-checks:

* ``BetaFamily(a, b)``      -- kernel ``y**(a-1) * (1-y)**(b-1)`` on (0, 1)
* ``NormalKnownVar(mu, var)`` -- Gaussian with known variance
* ``ParetoFamily(p)``       -- density ``(p-1) * x**(-p)`` on [1, inf)

The Pareto density requires ``p > 1``; its normalizing coefficient ``p - 1``
must be positive.  Raising it to an exponent ``gamma`` with ``p * gamma <= 1``
yields a non-integrable function, which is the canonical example of a power
transform leaving the space of distributions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.special import betaln, digamma

from .errors import DivergentResultError, SupportMismatchError
from .grid import GridDensity, SupportGrid, normalize

# Default truncation policy: Normal grids span mu +/- 8 sigma, Beta grids clip
# the unit interval by BETA_EPS per side, Pareto grids keep omitted tail mass
# below PARETO_TAIL_MASS.  These keep truncation error below the comparison
# tolerances used throughout the test suites.
BETA_EPS = 1e-6
NORMAL_HALF_WIDTH_SIGMAS = 8.0
PARETO_TAIL_MASS = 1e-8


@dataclass(frozen=True)
class BetaFamily:
    a: float
    b: float

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0):
            raise ValueError("Beta parameters must be > 0")


@dataclass(frozen=True)
class NormalKnownVar:
    mu: float
    var: float

    def __post_init__(self):
        if not self.var > 0:
            raise ValueError("variance must be > 0")


@dataclass(frozen=True)
class ParetoFamily:
    p: float

    def __post_init__(self):
        if not self.p > 1:
            raise ValueError("Pareto exponent must be > 1 for a proper density")


AnalyticFamily = Union[BetaFamily, NormalKnownVar, ParetoFamily]


def analytic_power(family: AnalyticFamily, gamma: float) -> AnalyticFamily:
    """Family obtained by raising the density to ``gamma`` and renormalizing.

    Beta(a, b)        -> Beta(gamma*(a-1)+1, gamma*(b-1)+1)
    Normal(mu, var)   -> Normal(mu, var/gamma)
    Pareto(p)         -> Pareto(p*gamma)

    Raises
    ------
    DivergentResultError
        When the transformed kernel is not integrable: a transformed Beta
        parameter <= 0, or a Pareto exponent ``p*gamma <= 1``.
    """
    if not gamma > 0:
        raise ValueError("gamma must be > 0")
    if isinstance(family, BetaFamily):
        a = gamma * (family.a - 1.0) + 1.0
        b = gamma * (family.b - 1.0) + 1.0
        if a <= 0 or b <= 0:
            raise DivergentResultError(
                f"Beta({family.a}, {family.b})**{gamma} has non-integrable "
                f"kernel (transformed parameters {a}, {b})"
            )
        return BetaFamily(a, b)
    if isinstance(family, NormalKnownVar):
        return NormalKnownVar(family.mu, family.var / gamma)
    if isinstance(family, ParetoFamily):
        pg = family.p * gamma
        if pg <= 1:
            raise DivergentResultError(
                f"Pareto({family.p})**{gamma} diverges: exponent {pg} <= 1"
            )
        return ParetoFamily(pg)
    raise TypeError(f"unsupported family {family!r}")


def pareto_power_integrable(p: float, gamma: float) -> bool:
    """Whether ``(x**-p)**gamma`` stays integrable on [1, inf)."""
    if not p > 1:
        raise ValueError("p must be > 1")
    if not gamma > 0:
        raise ValueError("gamma must be > 0")
    return p * gamma > 1.0


def analytic_moments_entropy(family: AnalyticFamily) -> tuple[float, float, float]:
    """Closed-form (mean, variance, entropy in nats) of a family.

    Pareto moments that do not exist are reported as ``inf``.  The closed
    forms are validated against grid quadrature in the test suite before
    being trusted as oracles elsewhere.
    """
    if isinstance(family, BetaFamily):
        a, b = family.a, family.b
        s = a + b
        mean = a / s
        variance = a * b / (s * s * (s + 1.0))
        ent = (
            betaln(a, b)
            - (a - 1.0) * digamma(a)
            - (b - 1.0) * digamma(b)
            + (s - 2.0) * digamma(s)
        )
        return mean, variance, float(ent)
    if isinstance(family, NormalKnownVar):
        ent = 0.5 * math.log(2.0 * math.pi * math.e * family.var)
        return family.mu, family.var, ent
    if isinstance(family, ParetoFamily):
        k = family.p - 1.0  # tail index of the survival function x**-k
        mean = k / (k - 1.0) if k > 1 else math.inf
        variance = k / ((k - 1.0) ** 2 * (k - 2.0)) if k > 2 else math.inf
        ent = 1.0 + 1.0 / k - math.log(k)
        return mean, variance, ent
    raise TypeError(f"unsupported family {family!r}")


def weighted_beta_bernoulli(
    prior: BetaFamily, successes: int, failures: int, alpha: float, beta: float
) -> BetaFamily:
    """Weighted Beta-Bernoulli update in closed form.

    The posterior kernel is ``theta**(beta*s + alpha*(a-1)) *
    (1-theta)**(beta*f + alpha*(b-1))``, i.e. the likelihood counts enter
    scaled by ``beta`` and the prior kernel exponents scaled by ``alpha``.
    """
    if not (alpha > 0 and beta > 0):
        raise ValueError("weights must be > 0")
    if successes < 0 or failures < 0:
        raise ValueError("counts must be nonnegative")
    a = beta * successes + alpha * (prior.a - 1.0) + 1.0
    b = beta * failures + alpha * (prior.b - 1.0) + 1.0
    if a <= 0 or b <= 0:
        raise DivergentResultError(
            f"weighted update yields non-integrable Beta parameters ({a}, {b})"
        )
    return BetaFamily(a, b)


def weighted_normal_normal(
    prior_mu: float,
    prior_var: float,
    x: float,
    like_var: float,
    alpha: float,
    beta: float,
) -> NormalKnownVar:
    """Weighted Normal-Normal update (known likelihood variance).

    Completing the square in ``beta*log N(x; theta, like_var) +
    alpha*log N(theta; prior_mu, prior_var)`` gives a Gaussian with

        precision = alpha/prior_var + beta/like_var
        mean      = (alpha*prior_mu/prior_var + beta*x/like_var) / precision
    """
    if not (prior_var > 0 and like_var > 0):
        raise ValueError("variances must be > 0")
    if not (alpha > 0 and beta > 0):
        raise ValueError("weights must be > 0")
    precision = alpha / prior_var + beta / like_var
    mean = (alpha * prior_mu / prior_var + beta * x / like_var) / precision
    return NormalKnownVar(mean, 1.0 / precision)


def log_pdf(family: AnalyticFamily, x: np.ndarray) -> np.ndarray:
    """Log density of a family, elementwise over ``x``."""
    x = np.asarray(x, dtype=float)
    if isinstance(family, BetaFamily):
        return (
            (family.a - 1.0) * np.log(x)
            + (family.b - 1.0) * np.log1p(-x)
            - betaln(family.a, family.b)
        )
    if isinstance(family, NormalKnownVar):
        return -0.5 * ((x - family.mu) ** 2 / family.var + math.log(2.0 * math.pi * family.var))
    if isinstance(family, ParetoFamily):
        return math.log(family.p - 1.0) - family.p * np.log(x)
    raise TypeError(f"unsupported family {family!r}")


def _check_support(family: AnalyticFamily, grid: SupportGrid) -> None:
    pts = grid.points
    if isinstance(family, BetaFamily):
        if pts[0] <= 0.0 or pts[-1] >= 1.0:
            raise SupportMismatchError(
                "Beta grids must stay strictly inside (0, 1); clip by epsilon"
            )
    elif isinstance(family, ParetoFamily):
        if pts[0] < 1.0:
            raise SupportMismatchError("Pareto support starts at 1")
    # NormalKnownVar: any finite grid is inside the support.


def to_grid(family: AnalyticFamily, grid: SupportGrid) -> GridDensity:
    """Evaluate a family pointwise on a grid and renormalize.

    The result is the truncated-renormalized family restricted to the grid's
    support window.  Value ratios match the analytic density exactly, so
    relation classification and conjugate/grid comparisons are unaffected by
    truncation; only absolute moments and entropies pick up the (small,
    policy-bounded) tail error.
    """
    _check_support(family, grid)
    logv = log_pdf(family, grid.points)
    return normalize(np.exp(logv - np.max(logv)), grid)


def default_grid(family: AnalyticFamily, num_points: int) -> SupportGrid:
    """Grid tailored to a family's support and tail behaviour.

    Beta families get an edge-graded grid on the epsilon-clipped unit
    interval (their kernels may blow up at 0 and 1); Normal families a
    uniform grid over mu +/- 8 sigma; Pareto families a log-graded grid out
    to the point where the omitted tail mass drops below 1e-8.
    """
    if isinstance(family, BetaFamily):
        return SupportGrid.edge_graded(BETA_EPS, 1.0 - BETA_EPS, num_points)
    if isinstance(family, NormalKnownVar):
        half = NORMAL_HALF_WIDTH_SIGMAS * math.sqrt(family.var)
        return SupportGrid.uniform(family.mu - half, family.mu + half, num_points)
    if isinstance(family, ParetoFamily):
        k = family.p - 1.0
        upper = PARETO_TAIL_MASS ** (-1.0 / k)
        return SupportGrid.log_graded(1.0, upper, num_points)
    raise TypeError(f"unsupported family {family!r}")
