"""Monotone dispersion/concentration classification and its guarantees.

For two same-grid densities ``base`` and ``other``, ``other`` is a *monotone
dispersion* of ``base`` when, over all point pairs (w1, w2):

  (4)  base(w1) = base(w2)  <=>  other(w1) = other(w2)
  (5)  base(w1) > base(w2)  <=>  other(w1) > other(w2)
  (6)  base(w1) > base(w2)   =>  base(w1)/base(w2) > other(w1)/other(w2)

so ``other`` keeps the ordinal shape of ``base`` while strictly compressing
every density ratio toward one.  The inverse relation (ratios strictly
exaggerated) makes ``other`` a *monotone concentration* of ``base``.

This module classifies pairs exhaustively over grid-point pairs and verifies
the structural consequences of the relation numerically: higher-highs/
lower-lows implications, dominance at the maximizer, the density-crossing
bounds bracketing a threshold, the threshold sign property, and the entropy
ordering (a dispersion never has lower entropy, strictly higher off the
threshold level set).

Pairwise scans cost O(n^2); grids beyond ``PAIRWISE_POINT_CAP`` points are
uniformly subsampled first.  Equality uses the shared relative tie tolerance
so "equal" and "strictly ordered" partition pair space consistently.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import (
    GridMismatchError,
    InvariantViolationError,
    NotADispersionPairError,
)
from .grid import TIE_REL_TOL, GridDensity, entropy, grids_equal

# Pairwise checks subsample grids larger than this (uniform stride).
PAIRWISE_POINT_CAP = 512

# Two entropies within this of each other count as equal.
ENTROPY_TOL = 1e-8

# At most this many violating pairs are kept as witnesses.
MAX_WITNESSES = 64


class RelationKind(str, Enum):
    MONOTONE_DISPERSION = "monotone_dispersion"
    MONOTONE_CONCENTRATION = "monotone_concentration"
    IDENTICAL = "identical"
    NEITHER = "neither"


class EntropyOrder(str, Enum):
    GREATER = "greater"
    LESS = "less"
    EQUAL_WITHIN_TOL = "equal_within_tol"


@dataclass(frozen=True)
class RelationVerdict:
    """Classification of ``other`` relative to ``base``.

    ``violations`` holds (w1, w2, condition) triples -- condition in
    {4, 5, 6} -- witnessing failures; it is nonempty exactly when the kind is
    NEITHER (capped at MAX_WITNESSES entries).
    """

    kind: RelationKind
    violations: tuple

    def __post_init__(self):
        if (self.kind is RelationKind.NEITHER) != bool(self.violations):
            raise InvariantViolationError(
                "NEITHER verdicts must carry witnesses, others must not"
            )


@dataclass(frozen=True)
class CrossingBounds:
    """Range of the dispersed density across the sign change of base - other.

    ``lower`` is the largest dispersed-density value where the base density
    sits weakly below the dispersed one; ``upper`` the smallest where it sits
    weakly above.  The relation guarantees ``lower <= upper``, and any
    ``threshold`` in between separates the two regimes.
    """

    lower: float
    upper: float
    threshold: float
    below_set_nonempty: bool
    above_set_nonempty: bool

    def __post_init__(self):
        if not (self.below_set_nonempty and self.above_set_nonempty):
            raise InvariantViolationError(
                "both comparison sets must be nonempty for normalized densities"
            )
        if self.lower > self.upper:
            raise InvariantViolationError(
                f"crossing bounds inverted: {self.lower} > {self.upper}"
            )
        if not self.lower <= self.threshold <= self.upper:
            raise ValueError("threshold must lie within [lower, upper]")


@dataclass(frozen=True)
class EntropyOrdering:
    """Entropies of a pair plus how the second compares to the first."""

    order: EntropyOrder
    base_entropy: float
    other_entropy: float


@dataclass(frozen=True)
class ImplicationResult:
    """Outcome of a universally quantified pairwise check."""

    holds: bool
    witnesses: tuple


def _close(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Symmetric relative equality at the shared tie tolerance."""
    return np.abs(a - b) <= TIE_REL_TOL * np.maximum(np.abs(a), np.abs(b))


def _subsample(d: GridDensity, cap: int):
    n = len(d)
    if n <= cap:
        return d.grid.points, d.values
    idx = np.unique(np.round(np.linspace(0, n - 1, cap)).astype(int))
    return d.grid.points[idx], d.values[idx]


def _check_same_grid(base: GridDensity, other: GridDensity) -> None:
    if not grids_equal(base.grid, other.grid):
        raise GridMismatchError("densities must share one grid")


def _collect(pts_i, pts_j, mask: np.ndarray, cond: int, out: list) -> None:
    if len(out) >= MAX_WITNESSES:
        return
    ii, jj = np.nonzero(np.triu(mask | mask.T, k=1))
    for i, j in zip(ii, jj):
        out.append((float(pts_i[i]), float(pts_j[j]), cond))
        if len(out) >= MAX_WITNESSES:
            break


def classify_relation(
    base: GridDensity, other: GridDensity, point_cap: int = PAIRWISE_POINT_CAP
) -> RelationVerdict:
    """Classify ``other`` against ``base`` over all grid-point pairs.

    Returns MONOTONE_DISPERSION when ``other`` disperses ``base`` (all
    ratios compressed), MONOTONE_CONCENTRATION when it exaggerates them,
    IDENTICAL when the values agree pointwise within the tie tolerance, and
    NEITHER (with witnesses) otherwise.  Uniform-vs-uniform pairs normalize
    to the same constant, so they land on IDENTICAL, never on a directional
    verdict.
    """
    _check_same_grid(base, other)
    if bool(np.all(_close(base.values, other.values))):
        return RelationVerdict(RelationKind.IDENTICAL, ())
    pts, g = _subsample(base, point_cap)
    _, o = _subsample(other, point_cap)

    gi, gj = g[:, None], g[None, :]
    oi, oj = o[:, None], o[None, :]
    eq_g = _close(gi, gj)
    eq_o = _close(oi, oj)
    gt_g = (gi > gj) & ~eq_g
    gt_o = (oi > oj) & ~eq_o

    witnesses: list = []
    cond4_bad = eq_g != eq_o
    if cond4_bad.any():
        _collect(pts, pts, cond4_bad, 4, witnesses)
    cond5_bad = ~eq_g & ~eq_o & (gt_g != gt_o)
    if cond5_bad.any():
        _collect(pts, pts, cond5_bad, 5, witnesses)
    if witnesses:
        return RelationVerdict(RelationKind.NEITHER, tuple(witnesses))

    ratio_g = gi / gj
    ratio_o = oi / oj
    breaks_dispersion = gt_g & (ratio_g <= ratio_o)
    breaks_concentration = gt_g & (ratio_g >= ratio_o)
    if not breaks_dispersion.any():
        return RelationVerdict(RelationKind.MONOTONE_DISPERSION, ())
    if not breaks_concentration.any():
        return RelationVerdict(RelationKind.MONOTONE_CONCENTRATION, ())
    minority = (
        breaks_dispersion
        if breaks_dispersion.sum() <= breaks_concentration.sum()
        else breaks_concentration
    )
    _collect(pts, pts, minority, 6, witnesses)
    return RelationVerdict(RelationKind.NEITHER, tuple(witnesses))


def _require_dispersion(base: GridDensity, dispersed: GridDensity) -> None:
    verdict = classify_relation(base, dispersed)
    if verdict.kind is not RelationKind.MONOTONE_DISPERSION:
        raise NotADispersionPairError(
            f"expected a monotone dispersion of the base density, got "
            f"{verdict.kind.value}"
        )


def crossing_bounds(
    base: GridDensity, dispersed: GridDensity, threshold: float | None = None
) -> CrossingBounds:
    """Bracket the dispersed-density level separating the two sign regimes.

    Over grid points, ``lower = max{ dispersed(w) : base(w) <= dispersed(w) }``
    and ``upper = min{ dispersed(w) : base(w) >= dispersed(w) }`` (ties at the
    shared tolerance fall into both sets).  Both sets are nonempty because
    both densities integrate to one, and the dispersion relation forces
    ``lower <= upper``; a violation raises InvariantViolationError since it
    can only come from a numerical or logic fault.  ``threshold`` defaults to
    the midpoint and may be overridden with any value in [lower, upper].
    """
    _require_dispersion(base, dispersed)
    g = base.values
    o = dispersed.values
    tie = _close(g, o)
    below = (g < o) | tie  # base weakly below the dispersed density
    above = (g > o) | tie
    if not below.any() or not above.any():
        raise InvariantViolationError(
            "a normalized pair must cross: one comparison set came up empty"
        )
    lower = float(np.max(o[below]))
    upper = float(np.min(o[above]))
    if threshold is None:
        threshold = 0.5 * (lower + upper)
    return CrossingBounds(
        lower=lower,
        upper=upper,
        threshold=float(threshold),
        below_set_nonempty=True,
        above_set_nonempty=True,
    )


def verify_higher_highs(
    base: GridDensity,
    dispersed: GridDensity,
    point_cap: int = PAIRWISE_POINT_CAP,
) -> ImplicationResult:
    """Check the higher-highs / lower-lows implications over all pairs.

    For every pair (w1, w2):

        base(w1) > base(w2) >= dispersed(w2)  =>  base(w1) > dispersed(w1)
        base(w1) < base(w2) <= dispersed(w2)  =>  base(w1) < dispersed(w1)

    Returns whether both implications held, with violating pairs as
    witnesses.
    """
    _require_dispersion(base, dispersed)
    pts, g = _subsample(base, point_cap)
    _, o = _subsample(dispersed, point_cap)

    tie_go = _close(g, o)
    gi, gj = g[:, None], g[None, :]
    eq_g = _close(gi, gj)
    gt_g = (gi > gj) & ~eq_g
    lt_g = (gi < gj) & ~eq_g
    ge_j = ((g > o) | tie_go)[None, :]  # base(w2) >= dispersed(w2)
    le_j = ((g < o) | tie_go)[None, :]

    conclusion_hi = ((g > o) & ~tie_go)[:, None]
    conclusion_lo = ((g < o) & ~tie_go)[:, None]

    bad = (gt_g & ge_j & ~conclusion_hi) | (lt_g & le_j & ~conclusion_lo)
    if not bad.any():
        return ImplicationResult(True, ())
    witnesses: list = []
    ii, jj = np.nonzero(bad)
    for i, j in zip(ii[:MAX_WITNESSES], jj[:MAX_WITNESSES]):
        witnesses.append((float(pts[i]), float(pts[j])))
    return ImplicationResult(False, tuple(witnesses))


def verify_max_dominance(base: GridDensity, dispersed: GridDensity) -> bool:
    """Check that the base density dominates its dispersion at the maximizer.

    At every maximizer of the base density the base value must be >= the
    dispersed value, strictly so whenever the points strictly below the
    maximum carry positive total cell measure.
    """
    _require_dispersion(base, dispersed)
    g = base.values
    o = dispersed.values
    gmax = float(np.max(g))
    at_max = g >= gmax * (1.0 - TIE_REL_TOL)
    below_mass = float(np.sum(base.grid.cell_measures[~at_max]))
    tie = _close(g, o)
    if below_mass > 0:
        return bool(np.all((g[at_max] > o[at_max]) & ~tie[at_max]))
    return bool(np.all((g[at_max] > o[at_max]) | tie[at_max]))


def verify_threshold_signs(
    base: GridDensity, dispersed: GridDensity, threshold: float | None = None
) -> ImplicationResult:
    """Check the threshold sign property at every grid point.

    With a threshold from :func:`crossing_bounds`, ``base - dispersed`` and
    ``log(dispersed) - log(threshold)`` must never have strictly opposite
    signs (values tied at the tolerance count as zero).
    """
    bounds = crossing_bounds(base, dispersed, threshold)
    g = base.values
    o = dispersed.values
    r = bounds.threshold
    diff_sign = np.where(_close(g, o), 0.0, np.sign(g - o))
    level_sign = np.where(
        _close(o, np.full_like(o, r)), 0.0, np.sign(np.log(o) - np.log(r))
    )
    bad = diff_sign * level_sign < 0
    if not bad.any():
        return ImplicationResult(True, ())
    pts = base.grid.points[bad]
    witnesses = tuple((float(p), r) for p in pts[:MAX_WITNESSES])
    return ImplicationResult(False, witnesses)


def entropy_ordering(
    base: GridDensity, other: GridDensity, tol: float = ENTROPY_TOL
) -> EntropyOrdering:
    """Compare the entropies of two same-grid densities.

    The order reports ``other`` against ``base`` (GREATER means the other
    density carries more entropy).  When the pair classifies as a monotone
    dispersion, the guaranteed ordering is asserted: a dispersed density with
    entropy below the base's by more than ``tol`` raises
    InvariantViolationError, since the relation makes that mathematically
    impossible.  A gap inside ``tol`` reports EQUAL_WITHIN_TOL rather than
    raising -- exponents infinitesimally close to one legitimately produce
    sub-tolerance gaps that floating point cannot certify as strict.
    """
    _check_same_grid(base, other)
    h_base = entropy(base)
    h_other = entropy(other)
    gap = h_other - h_base
    if gap > tol:
        order = EntropyOrder.GREATER
    elif gap < -tol:
        order = EntropyOrder.LESS
    else:
        order = EntropyOrder.EQUAL_WITHIN_TOL

    if gap < -tol:
        verdict = classify_relation(base, other)
        if verdict.kind is RelationKind.MONOTONE_DISPERSION:
            raise InvariantViolationError(
                f"dispersed density lost entropy: {h_other} < {h_base}"
            )
    return EntropyOrdering(order=order, base_entropy=h_base, other_entropy=h_other)
