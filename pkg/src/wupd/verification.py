"""Randomized self-verification of the dispersion/entropy guarantees.

Each trial draws a family (Beta or truncated Normal), random parameters, and
a random exponent, builds the gridded density and its power transform, and
runs every structural check the dispersion relation guarantees:

* power_direction        -- exponent < 1 disperses, > 1 concentrates
* higher_highs           -- pairwise higher-highs / lower-lows implications
* max_dominance          -- base beats its dispersion at the maximizer
* crossing_sets_nonempty -- both weak comparison sets are populated
* crossing_bounds_ordered-- the crossing bracket is not inverted
* threshold_sign_property-- (base - dispersed) never opposes the level sign
* entropy_weak_order     -- a dispersion never has lower entropy
* entropy_vs_weight      -- entropy ordering matches the sign of exponent - 1

Trials are independently seeded from (seed, trial_index) so any failure can
be replayed in isolation.  A deliberately corrupted transform (``corrupt``
flag, for negative-control testing) must make power_direction fail.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .dispersion import (
    EntropyOrder,
    RelationKind,
    classify_relation,
    crossing_bounds,
    entropy_ordering,
    verify_higher_highs,
    verify_max_dominance,
    verify_threshold_signs,
)
from .errors import InvariantViolationError
from .families import BetaFamily, NormalKnownVar, default_grid, to_grid
from .grid import GridDensity, normalize, power_transform

CHECK_NAMES = (
    "power_direction",
    "higher_highs",
    "max_dominance",
    "crossing_sets_nonempty",
    "crossing_bounds_ordered",
    "threshold_sign_property",
    "entropy_weak_order",
    "entropy_vs_weight",
)

# Exponents within this of 1 are treated as the identity edge case: the
# entropy gap may fall below reporting tolerance, so either ordering passes.
GAMMA_IDENTITY_BAND = 1e-3

DEFAULT_GRID_POINTS = 256


@dataclass
class CheckTally:
    name: str
    passed: int = 0
    failed: int = 0
    failures: list = field(default_factory=list)

    def record(self, ok: bool, trial: int, detail: str, context: dict) -> None:
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            self.failures.append({"trial": trial, "detail": detail, **context})


@dataclass
class VerificationReport:
    seed: int
    trials: int
    checks: dict

    @property
    def all_passed(self) -> bool:
        return all(tally.failed == 0 for tally in self.checks.values())

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "trials": self.trials,
            "all_passed": self.all_passed,
            "checks": {
                name: {
                    "passed": tally.passed,
                    "failed": tally.failed,
                    "failures": tally.failures,
                }
                for name, tally in self.checks.items()
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    def summary_lines(self) -> list:
        lines = []
        for name, tally in self.checks.items():
            total = tally.passed + tally.failed
            status = "ok" if tally.failed == 0 else "FAIL"
            lines.append(f"{name}: {tally.passed}/{total} passed [{status}]")
        for name, tally in self.checks.items():
            for failure in tally.failures:
                lines.append(
                    f"  replay trial {failure['trial']} "
                    f"(seed [{self.seed}, {failure['trial']}]): "
                    f"{name}: {failure['detail']}"
                )
        return lines


def draw_family(rng: np.random.Generator):
    """Random non-uniform Beta or a Normal, avoiding near-uniform Betas.

    Beta parameters both within 0.05 of 1 make the density nearly constant;
    the entropy gap then shrinks toward reporting tolerance, so such draws
    are rejected and redrawn.
    """
    if rng.random() < 0.5:
        while True:
            a = rng.uniform(0.3, 5.0)
            b = rng.uniform(0.3, 5.0)
            if abs(a - 1.0) > 0.05 or abs(b - 1.0) > 0.05:
                return BetaFamily(a, b)
    return NormalKnownVar(rng.uniform(-2.0, 2.0), rng.uniform(0.25, 4.0))


def draw_gamma(rng: np.random.Generator) -> float:
    """Log-uniform exponent in [0.2, 5]; 2% of draws are exactly 1."""
    if rng.random() < 0.02:
        return 1.0
    return float(np.exp(rng.uniform(np.log(0.2), np.log(5.0))))


def _corrupt_density(d: GridDensity) -> GridDensity:
    """Break order equivalence by swapping the argmax and argmin values.

    For any non-uniform density the formerly-highest point now ranks lowest,
    so ordinal equivalence with the uncorrupted base fails at that pair no
    matter how the rest of the curve looks.
    """
    values = d.values.copy()
    i, j = int(np.argmax(values)), int(np.argmin(values))
    values[i], values[j] = values[j], values[i]
    return normalize(values, d.grid)


def run_trial(
    seed: int,
    trial: int,
    grid_points: int = DEFAULT_GRID_POINTS,
    corrupt: bool = False,
) -> dict:
    """Run one verification trial; returns per-check booleans plus context."""
    rng = np.random.default_rng([seed, trial])
    family = draw_family(rng)
    gamma = draw_gamma(rng)
    grid = default_grid(family, grid_points)
    base = to_grid(family, grid)
    transform = power_transform(base, gamma)
    if corrupt:
        transform = _corrupt_density(transform)

    context = {"family": repr(family), "gamma": gamma}
    results: dict = {}

    if gamma < 1.0:
        expected = RelationKind.MONOTONE_DISPERSION
    elif gamma > 1.0:
        expected = RelationKind.MONOTONE_CONCENTRATION
    else:
        expected = RelationKind.IDENTICAL
    verdict = classify_relation(base, transform)
    results["power_direction"] = (
        verdict.kind is expected,
        f"expected {expected.value}, got {verdict.kind.value}",
    )

    directional = verdict.kind in (
        RelationKind.MONOTONE_DISPERSION,
        RelationKind.MONOTONE_CONCENTRATION,
    )
    if directional:
        if verdict.kind is RelationKind.MONOTONE_DISPERSION:
            concentrated, dispersed = base, transform
        else:
            concentrated, dispersed = transform, base

        hh = verify_higher_highs(concentrated, dispersed)
        results["higher_highs"] = (hh.holds, f"witnesses {hh.witnesses[:3]}")
        md = verify_max_dominance(concentrated, dispersed)
        results["max_dominance"] = (md, "maximizer not dominated")
        try:
            bounds = crossing_bounds(concentrated, dispersed)
            results["crossing_sets_nonempty"] = (
                bounds.below_set_nonempty and bounds.above_set_nonempty,
                "a comparison set came up empty",
            )
            results["crossing_bounds_ordered"] = (
                bounds.lower <= bounds.upper,
                f"bounds inverted: {bounds.lower} > {bounds.upper}",
            )
            signs = verify_threshold_signs(concentrated, dispersed)
            results["threshold_sign_property"] = (
                signs.holds,
                f"witnesses {signs.witnesses[:3]}",
            )
        except InvariantViolationError as e:
            msg = str(e)
            results["crossing_sets_nonempty"] = (False, msg)
            results["crossing_bounds_ordered"] = (False, msg)
            results["threshold_sign_property"] = (False, msg)
        try:
            ordering = entropy_ordering(concentrated, dispersed)
            results["entropy_weak_order"] = (
                ordering.order is not EntropyOrder.LESS,
                f"dispersed entropy {ordering.other_entropy} below "
                f"{ordering.base_entropy}",
            )
        except InvariantViolationError as e:
            results["entropy_weak_order"] = (False, str(e))
    else:
        # identity draw (or a corrupted pair): pairwise implications are
        # vacuous, count them as passes so tallies stay comparable
        for name in (
            "higher_highs",
            "max_dominance",
            "crossing_sets_nonempty",
            "crossing_bounds_ordered",
            "threshold_sign_property",
            "entropy_weak_order",
        ):
            results[name] = (True, "")

    ordering = entropy_ordering(base, transform)
    if abs(gamma - 1.0) <= GAMMA_IDENTITY_BAND:
        ok = True
        detail = ""
    elif gamma > 1.0:
        ok = ordering.order is EntropyOrder.LESS
        detail = f"expected entropy loss, got {ordering.order.value}"
    else:
        ok = ordering.order is EntropyOrder.GREATER
        detail = f"expected entropy gain, got {ordering.order.value}"
    results["entropy_vs_weight"] = (ok, detail)

    return {"results": results, "context": context}


def verify_suite(
    seed: int,
    trials: int,
    grid_points: int = DEFAULT_GRID_POINTS,
    corrupt: bool = False,
) -> VerificationReport:
    """Run the full randomized check battery and tally per-check outcomes."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    checks = {name: CheckTally(name) for name in CHECK_NAMES}
    for trial in range(trials):
        outcome = run_trial(seed, trial, grid_points=grid_points, corrupt=corrupt)
        for name in CHECK_NAMES:
            ok, detail = outcome["results"][name]
            checks[name].record(ok, trial, detail, outcome["context"])
    return VerificationReport(seed=seed, trials=trials, checks=checks)
