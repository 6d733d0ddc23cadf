"""Scenario configuration and the simulation runner.

Scenarios are described by a strict JSON document (schema shipped in
``wupd/schemas/scenario.schema.json``; unknown keys are rejected so typos in
weight names fail loudly).  A run produces

* a CSV file with one row per step -- step index, observation, posterior
  mean, posterior variance, posterior entropy, alpha used, beta used -- where
  step 0 is the (alpha-weighted) prior before any observation, and
* a JSON summary with the final moments, final entropy, and the entropy gap
  against an unweighted Bayes run on the same data.

Outputs are byte-identical across runs for a fixed config and seed: floats
are written with 17 significant digits, JSON keys are sorted, and the
observation generator is the PCG64 generator behind
``numpy.random.default_rng`` seeded from the config.  Recorded observation
files (inline ``values``) are the canonical fixtures for sharing scenarios
with other implementations.
"""

from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import dataclass
from importlib import resources
from typing import Union

import jsonschema
import numpy as np

from .errors import InvalidConfigError
from .families import (
    BETA_EPS,
    BetaFamily,
    NormalKnownVar,
    ParetoFamily,
    default_grid,
    to_grid,
)
from .grid import GridDensity, SupportGrid, moments
from .updating import (
    BeliefTrajectory,
    LikelihoodModel,
    WeightSchedule,
    bernoulli_model,
    normal_model,
    sequential_weighted_posterior,
)

DEFAULT_GRID_POINTS = 2001
GRID_POINTS_ENV_VAR = "WUPD_GRID_POINTS"


def default_grid_points() -> int:
    """Built-in default resolution, overridable via WUPD_GRID_POINTS."""
    raw = os.environ.get(GRID_POINTS_ENV_VAR)
    if raw is None:
        return DEFAULT_GRID_POINTS
    try:
        n = int(raw)
    except ValueError:
        raise InvalidConfigError(
            f"{GRID_POINTS_ENV_VAR} must be an integer, got {raw!r}"
        ) from None
    if n < 2:
        raise InvalidConfigError(f"{GRID_POINTS_ENV_VAR} must be >= 2, got {n}")
    return n


def _load_schema(name: str) -> dict:
    path = resources.files("wupd").joinpath("schemas", f"{name}.schema.json")
    return json.loads(path.read_text(encoding="utf-8"))


def validate_against_schema(instance: dict, schema_name: str) -> None:
    """Validate a parsed JSON document, raising InvalidConfigError on failure.

    The error message names the offending field path.
    """
    schema = _load_schema(schema_name)
    validator = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(instance), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        path = "/".join(str(p) for p in err.absolute_path) or "(root)"
        raise InvalidConfigError(f"{path}: {err.message}")


def parse_family(spec: dict):
    if spec["family"] == "beta":
        return BetaFamily(spec["a"], spec["b"])
    if spec["family"] == "normal":
        return NormalKnownVar(spec["mu"], spec["var"])
    return ParetoFamily(spec["p"])


def build_grid(grid_spec: dict | None, family) -> SupportGrid:
    """Grid from an explicit spec, falling back to the family default."""
    spec = dict(grid_spec or {})
    points = spec.get("points", default_grid_points())
    if not (spec.keys() - {"points"}):
        return default_grid(family, points)
    if isinstance(family, BetaFamily):
        eps = spec.get("epsilon", BETA_EPS)
        lower = spec.get("lower", eps)
        upper = spec.get("upper", 1.0 - eps)
        grading = spec.get("grading", "edge")
    else:
        fallback = default_grid(family, 2)
        lower = spec.get("lower", fallback.lower)
        upper = spec.get("upper", fallback.upper)
        pareto = isinstance(family, ParetoFamily)
        grading = spec.get("grading", "log" if pareto else "uniform")
    if not upper > lower:
        raise InvalidConfigError("grid: upper must exceed lower")
    builders = {
        "uniform": SupportGrid.uniform,
        "edge": SupportGrid.edge_graded,
        "log": SupportGrid.log_graded,
    }
    return builders[grading](lower, upper, points)


def parse_weight_schedule(spec: dict) -> WeightSchedule:
    alpha = spec["alpha"]
    betas = spec["betas"]
    if isinstance(betas, dict):
        name = betas["name"]
        if name == "constant":
            value = betas["value"]
            return WeightSchedule(alpha, value)
        if name == "linear_in_t":
            base, slope = betas["base"], betas["slope"]
            return WeightSchedule(alpha, lambda j: base + slope * (j - 1))
        if name == "reciprocal_in_t":
            scale = betas["scale"]
            return WeightSchedule(alpha, lambda j: scale / j)
        raise InvalidConfigError(f"weights/betas/name: unknown schedule {name!r}")
    return WeightSchedule(alpha, betas)


def realize_observations(spec: dict) -> tuple:
    """Inline values, or a draw from the named seeded generator."""
    if "values" in spec:
        return tuple(spec["values"])
    gen = spec["generator"]
    rng = np.random.default_rng(gen["seed"])
    if gen["kind"] == "bernoulli":
        draws = (rng.random(gen["count"]) < gen["theta"]).astype(int)
        return tuple(int(v) for v in draws)
    draws = rng.normal(gen["loc"], np.sqrt(gen["var"]), gen["count"])
    return tuple(float(v) for v in draws)


@dataclass(frozen=True)
class ScenarioConfig:
    """Validated, fully realized scenario: ready to run."""

    prior_family: Union[BetaFamily, NormalKnownVar]
    grid: SupportGrid
    prior: GridDensity
    model: LikelihoodModel
    schedule: WeightSchedule
    observations: tuple
    csv_path: str | None
    summary_path: str | None

    @classmethod
    def from_dict(cls, raw: dict) -> "ScenarioConfig":
        validate_against_schema(raw, "scenario")
        prior_family = parse_family(raw["prior"])
        like = raw["likelihood"]
        if like["family"] == "bernoulli" and not isinstance(prior_family, BetaFamily):
            raise InvalidConfigError(
                "likelihood/family: bernoulli requires a beta prior"
            )
        if like["family"] == "normal" and not isinstance(prior_family, NormalKnownVar):
            raise InvalidConfigError(
                "likelihood/family: normal requires a normal prior"
            )
        grid = build_grid(raw.get("grid"), prior_family)
        prior = to_grid(prior_family, grid)
        if like["family"] == "bernoulli":
            model = bernoulli_model(grid)
        else:
            model = normal_model(grid, like["var"])
        schedule = parse_weight_schedule(raw["weights"])
        observations = realize_observations(raw["observations"])
        if like["family"] == "bernoulli":
            if any(x not in (0, 1) for x in observations):
                raise InvalidConfigError(
                    "observations: bernoulli observations must be 0 or 1"
                )
        outputs = raw.get("outputs", {})
        return cls(
            prior_family=prior_family,
            grid=grid,
            prior=prior,
            model=model,
            schedule=schedule,
            observations=observations,
            csv_path=outputs.get("csv"),
            summary_path=outputs.get("summary"),
        )

    @classmethod
    def from_json(cls, text: str) -> "ScenarioConfig":
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as e:
            raise InvalidConfigError(f"(root): not valid JSON: {e}") from None
        if not isinstance(raw, dict):
            raise InvalidConfigError("(root): config must be a JSON object")
        return cls.from_dict(raw)


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def trajectory_rows(trajectory: BeliefTrajectory) -> list:
    """CSV rows (as string lists) for a trajectory, step 0 included."""
    rows = []
    for step, post in enumerate(trajectory.posteriors):
        summary = moments(post)
        if step == 0:
            obs_repr = ""
            beta_repr = ""
        else:
            obs = trajectory.observations[step - 1]
            obs_repr = str(obs) if isinstance(obs, int) else _fmt(obs)
            beta_repr = _fmt(trajectory.betas[step - 1])
        rows.append(
            [
                str(step),
                obs_repr,
                _fmt(summary.mean),
                _fmt(summary.variance),
                _fmt(trajectory.entropies[step]),
                _fmt(trajectory.alphas[step]),
                beta_repr,
            ]
        )
    return rows


CSV_HEADER = [
    "step",
    "observation",
    "posterior_mean",
    "posterior_variance",
    "posterior_entropy",
    "alpha",
    "beta",
]


def render_csv(trajectory: BeliefTrajectory) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    writer.writerows(trajectory_rows(trajectory))
    return buf.getvalue()


def render_summary(trajectory: BeliefTrajectory, bayes: BeliefTrajectory) -> str:
    final = moments(trajectory.final)
    summary = {
        "steps": len(trajectory.observations),
        "final_mean": final.mean,
        "final_variance": final.variance,
        "final_entropy": trajectory.entropies[-1],
        "bayes_final_entropy": bayes.entropies[-1],
        "entropy_gap_vs_bayes": trajectory.entropies[-1] - bayes.entropies[-1],
    }
    return json.dumps(summary, sort_keys=True, indent=2) + "\n"


def run_scenario(config: ScenarioConfig) -> BeliefTrajectory:
    """Run a scenario, write any configured outputs, return the trajectory.

    The summary's entropy gap compares the final weighted posterior against
    an unweighted (alpha = betas = 1) run on the same observations.
    """
    trajectory = sequential_weighted_posterior(
        config.prior, config.model, config.observations, config.schedule
    )
    if config.csv_path or config.summary_path:
        bayes = sequential_weighted_posterior(
            config.prior, config.model, config.observations, WeightSchedule(1.0, 1.0)
        )
        if config.csv_path:
            with open(config.csv_path, "w", encoding="utf-8", newline="") as f:
                f.write(render_csv(trajectory))
        if config.summary_path:
            with open(config.summary_path, "w", encoding="utf-8", newline="") as f:
                f.write(render_summary(trajectory, bayes))
    return trajectory
