"""Command-line front end.

Subcommands:

* ``update``   -- one-shot weighted posterior from a scenario config with a
                  single observation
* ``simulate`` -- run a scenario, writing the step CSV and JSON summary
* ``analyze``  -- classify a pair of configured densities and report the
                  crossing bounds and entropy ordering
* ``verify``   -- run the randomized verification suite
* ``fit``      -- estimate updating weights from observations plus reports

Exit codes: 0 on success, 1 when verification or fitting fails, 2 on invalid
configuration or I/O errors.  The WUPD_GRID_POINTS environment variable
overrides the default grid resolution used when a config does not pin one.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .dispersion import (
    RelationKind,
    classify_relation,
    crossing_bounds,
    entropy_ordering,
)
from .errors import InvalidConfigError, WupdError
from .families import to_grid
from .fitting import (
    DEFAULT_SEARCH_BOX,
    ReportedMeans,
    ReportedPosteriors,
    SearchBox,
    fit_weights,
)
from .grid import entropy as density_entropy
from .grid import moments, power_transform
from .scenario import (
    ScenarioConfig,
    build_grid,
    parse_family,
    run_scenario,
    validate_against_schema,
)
from .updating import weighted_posterior
from .verification import DEFAULT_GRID_POINTS as VERIFY_GRID_POINTS
from .verification import verify_suite

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2


def _read_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as f:
        text = f.read()
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise InvalidConfigError(f"(root): not valid JSON: {e}") from None
    if not isinstance(raw, dict):
        raise InvalidConfigError("(root): config must be a JSON object")
    return raw


def _emit(payload: dict, path: str | None) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if path:
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def cmd_update(args) -> int:
    config = ScenarioConfig.from_dict(_read_json(args.config))
    if len(config.observations) != 1:
        raise InvalidConfigError(
            "observations: update expects exactly one observation, got "
            f"{len(config.observations)}"
        )
    alpha = config.schedule.alpha_at(1)
    beta = config.schedule.beta_at(1)
    posterior = weighted_posterior(
        config.prior, config.model, config.observations[0], alpha, beta
    )
    summary = moments(posterior)
    _emit(
        {
            "observation": config.observations[0],
            "alpha": alpha,
            "beta": beta,
            "posterior_mean": summary.mean,
            "posterior_variance": summary.variance,
            "posterior_entropy": density_entropy(posterior),
            "mode_points": list(summary.mode_points),
        },
        args.output,
    )
    return EXIT_OK


def cmd_simulate(args) -> int:
    config = ScenarioConfig.from_dict(_read_json(args.config))
    trajectory = run_scenario(config)
    final = moments(trajectory.final)
    sys.stdout.write(
        f"steps={len(trajectory.observations)} "
        f"final_mean={final.mean:.6g} "
        f"final_variance={final.variance:.6g} "
        f"final_entropy={trajectory.entropies[-1]:.6g}\n"
    )
    return EXIT_OK


def cmd_analyze(args) -> int:
    raw = _read_json(args.config)
    validate_against_schema(raw, "analyze")
    base_family = parse_family(raw["base"])
    grid = build_grid(raw.get("grid"), base_family)
    base = to_grid(base_family, grid)
    other_spec = raw["other"]
    if "power_of_base" in other_spec:
        other = power_transform(base, other_spec["power_of_base"])
    else:
        other = to_grid(parse_family(other_spec), grid)

    verdict = classify_relation(base, other)
    ordering = entropy_ordering(base, other)
    report = {
        "kind": verdict.kind.value,
        "violations": [list(v) for v in verdict.violations],
        "entropy": {
            "base": ordering.base_entropy,
            "other": ordering.other_entropy,
            "order_of_other": ordering.order.value,
        },
        "bounds": None,
    }
    if verdict.kind is RelationKind.MONOTONE_DISPERSION:
        bounds = crossing_bounds(base, other)
    elif verdict.kind is RelationKind.MONOTONE_CONCENTRATION:
        bounds = crossing_bounds(other, base)
    else:
        bounds = None
    if bounds is not None:
        report["bounds"] = {
            "lower": bounds.lower,
            "upper": bounds.upper,
            "threshold": bounds.threshold,
        }
    _emit(report, raw.get("output"))
    return EXIT_OK


def cmd_verify(args) -> int:
    report = verify_suite(
        args.seed, args.trials, grid_points=args.grid_points, corrupt=args.corrupt
    )
    for line in report.summary_lines():
        sys.stdout.write(line + "\n")
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as f:
            f.write(report.to_json())
    return EXIT_OK if report.all_passed else EXIT_CHECK_FAILED


def _parse_search_box(text: str) -> SearchBox:
    try:
        parts = [float(p) for p in text.split(",")]
    except ValueError:
        raise InvalidConfigError(
            f"--search-box: expected four comma-separated numbers, got {text!r}"
        ) from None
    if len(parts) != 4:
        raise InvalidConfigError(
            f"--search-box: expected four comma-separated numbers, got {text!r}"
        )
    return SearchBox(*parts)


def cmd_fit(args) -> int:
    raw = _read_json(args.input)
    validate_against_schema(raw, "fit")
    prior = parse_family(raw["prior"])
    like_spec = raw["likelihood"]
    likelihood = "bernoulli" if like_spec["family"] == "bernoulli" else like_spec["var"]
    reports_spec = raw["reports"]
    if reports_spec["kind"] == "means":
        reports = ReportedMeans(tuple(reports_spec["values"]))
    else:
        reports = ReportedPosteriors(
            tuple(tuple(p) for p in reports_spec["parameters"])
        )
    box = _parse_search_box(args.search_box) if args.search_box else DEFAULT_SEARCH_BOX
    result = fit_weights(raw["observations"], prior, likelihood, reports, box)
    _emit(
        {
            "alpha_hat": result.alpha_hat,
            "beta_hat": result.beta_hat,
            "log_likelihood": result.log_likelihood,
            "grid_resolution_used": result.grid_resolution_used,
        },
        args.output,
    )
    if not math.isfinite(result.log_likelihood):
        sys.stderr.write("fit criterion is degenerate (no finite optimum)\n")
        return EXIT_CHECK_FAILED
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wupd",
        description="Weighted Bayesian updating: simulation, analysis, and "
        "verification tools",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_update = sub.add_parser(
        "update", help="one-shot weighted posterior from a scenario config"
    )
    p_update.add_argument("config", help="path to a scenario JSON config")
    p_update.add_argument("--output", help="write the JSON result here")
    p_update.set_defaults(handler=cmd_update)

    p_sim = sub.add_parser("simulate", help="run a scenario end to end")
    p_sim.add_argument("config", help="path to a scenario JSON config")
    p_sim.set_defaults(handler=cmd_simulate)

    p_analyze = sub.add_parser(
        "analyze", help="classify a density pair and report bounds/entropies"
    )
    p_analyze.add_argument("config", help="path to an analysis JSON config")
    p_analyze.set_defaults(handler=cmd_analyze)

    p_verify = sub.add_parser(
        "verify", help="run the randomized verification suite"
    )
    p_verify.add_argument("--seed", type=int, default=42)
    p_verify.add_argument("--trials", type=int, default=100)
    p_verify.add_argument("--grid-points", type=int, default=VERIFY_GRID_POINTS)
    p_verify.add_argument("--output", help="write the JSON report here")
    p_verify.add_argument(
        "--corrupt",
        action="store_true",
        help="negative control: corrupt each transform so checks must fail",
    )
    p_verify.set_defaults(handler=cmd_verify)

    p_fit = sub.add_parser("fit", help="estimate updating weights from reports")
    p_fit.add_argument("--input", required=True, help="path to a fit JSON input")
    p_fit.add_argument(
        "--search-box",
        help="alpha_min,alpha_max,beta_min,beta_max (default 0.2,3,0.2,3)",
    )
    p_fit.add_argument("--output", help="write the JSON result here")
    p_fit.set_defaults(handler=cmd_fit)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except (InvalidConfigError, OSError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_CONFIG
    except WupdError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
