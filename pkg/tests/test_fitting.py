"""Tests for weight estimation from reported beliefs."""

import numpy as np
import pytest

from wupd.errors import InsufficientDataError, InvalidSearchBoxError
from wupd.families import BetaFamily, NormalKnownVar, weighted_beta_bernoulli
from wupd.fitting import (
    ReportedMeans,
    ReportedPosteriors,
    SearchBox,
    fit_weights,
)


def beta_trajectory(prior, obs, alpha, beta):
    """Exact per-step conjugate posteriors for a weighted Beta-Bernoulli run."""
    params = []
    s = f = 0
    for x in obs:
        s += int(x)
        f += 1 - int(x)
        post = weighted_beta_bernoulli(prior, s, f, alpha, beta)
        params.append((post.a, post.b))
    return params


class TestRoundTrips:
    def test_recovers_biased_weights_from_posterior_reports(self):
        rng = np.random.default_rng(100)
        obs = (rng.random(500) < 0.65).astype(int)
        prior = BetaFamily(2.0, 2.0)
        params = beta_trajectory(prior, obs, alpha=1.5, beta=0.7)
        result = fit_weights(obs, prior, "bernoulli", ReportedPosteriors(tuple(params)))
        assert result.alpha_hat == pytest.approx(1.5, abs=0.01)
        assert result.beta_hat == pytest.approx(0.7, abs=0.01)

    def test_recovers_unweighted_updating(self):
        rng = np.random.default_rng(101)
        obs = (rng.random(300) < 0.5).astype(int)
        prior = BetaFamily(2.0, 2.0)
        params = beta_trajectory(prior, obs, alpha=1.0, beta=1.0)
        result = fit_weights(obs, prior, "bernoulli", ReportedPosteriors(tuple(params)))
        assert result.alpha_hat == pytest.approx(1.0, abs=0.1)
        assert result.beta_hat == pytest.approx(1.0, abs=0.1)

    def test_recovers_from_means_with_asymmetric_prior(self):
        rng = np.random.default_rng(102)
        obs = (rng.random(500) < 0.6).astype(int)
        prior = BetaFamily(2.0, 4.0)
        params = np.array(beta_trajectory(prior, obs, alpha=1.5, beta=0.7))
        means = params[:, 0] / params.sum(axis=1)
        result = fit_weights(obs, prior, "bernoulli", ReportedMeans(tuple(means)))
        assert result.alpha_hat == pytest.approx(1.5, abs=0.05)
        assert result.beta_hat == pytest.approx(0.7, abs=0.05)

    def test_normal_family_round_trip(self):
        rng = np.random.default_rng(103)
        x = rng.normal(1.0, 1.0, 300)
        prior = NormalKnownVar(0.5, 2.0)
        alpha, beta = 0.6, 2.2
        t = np.arange(1, 301)
        precision = alpha / prior.var + beta * t / 1.0
        mean = (alpha * prior.mu / prior.var + beta * np.cumsum(x) / 1.0) / precision
        reports = ReportedPosteriors(tuple(zip(mean, 1.0 / precision)))
        result = fit_weights(x, prior, 1.0, reports)
        assert result.alpha_hat == pytest.approx(alpha, abs=0.01)
        assert result.beta_hat == pytest.approx(beta, abs=0.01)


class TestTieBreaking:
    def test_symmetric_prior_means_pin_the_unweighted_point(self):
        # with a symmetric prior, means identify the weights only up to a
        # one-parameter family; the tie rule must choose (1, 1) when the data
        # were generated by unweighted updating
        rng = np.random.default_rng(104)
        obs = (rng.random(200) < 0.5).astype(int)
        prior = BetaFamily(2.0, 2.0)
        params = np.array(beta_trajectory(prior, obs, alpha=1.0, beta=1.0))
        means = params[:, 0] / params.sum(axis=1)
        result = fit_weights(obs, prior, "bernoulli", ReportedMeans(tuple(means)))
        assert result.alpha_hat == 1.0
        assert result.beta_hat == 1.0

    def test_uninformative_prior_leaves_alpha_at_one(self):
        # Beta(1, 1) prior kernel is flat, so alpha has no effect at all;
        # the tie rule keeps it at 1 while beta is still recovered
        rng = np.random.default_rng(105)
        obs = (rng.random(400) < 0.6).astype(int)
        prior = BetaFamily(1.0, 1.0)
        params = beta_trajectory(prior, obs, alpha=2.4, beta=0.8)
        result = fit_weights(obs, prior, "bernoulli", ReportedPosteriors(tuple(params)))
        assert result.alpha_hat == 1.0
        assert result.beta_hat == pytest.approx(0.8, abs=0.01)


class TestSearchBehaviour:
    def test_bayes_data_never_prefers_a_boundary(self):
        rng = np.random.default_rng(106)
        box = SearchBox(0.5, 2.0, 0.5, 2.0)
        for seed in range(5):
            r = np.random.default_rng([106, seed])
            obs = (r.random(150) < 0.5).astype(int)
            prior = BetaFamily(3.0, 2.0)
            params = beta_trajectory(prior, obs, alpha=1.0, beta=1.0)
            result = fit_weights(
                obs, prior, "bernoulli", ReportedPosteriors(tuple(params)), box
            )
            on_boundary = (
                result.alpha_hat in (box.alpha_min, box.alpha_max)
                or result.beta_hat in (box.beta_min, box.beta_max)
            )
            assert not on_boundary

    def test_estimates_stay_inside_the_box(self):
        rng = np.random.default_rng(107)
        obs = (rng.random(100) < 0.9).astype(int)
        prior = BetaFamily(2.0, 2.0)
        params = beta_trajectory(prior, obs, alpha=2.9, beta=2.9)
        box = SearchBox(0.5, 1.5, 0.5, 1.5)
        result = fit_weights(
            obs, prior, "bernoulli", ReportedPosteriors(tuple(params)), box
        )
        assert box.contains(result.alpha_hat, result.beta_hat)

    def test_resolution_description_present(self):
        rng = np.random.default_rng(108)
        obs = (rng.random(50) < 0.5).astype(int)
        prior = BetaFamily(2.0, 2.0)
        params = beta_trajectory(prior, obs, alpha=1.0, beta=1.0)
        result = fit_weights(obs, prior, "bernoulli", ReportedPosteriors(tuple(params)))
        assert "lattice" in result.grid_resolution_used


class TestInputValidation:
    def test_single_observation_insufficient(self):
        with pytest.raises(InsufficientDataError):
            fit_weights(
                [1],
                BetaFamily(1, 1),
                "bernoulli",
                ReportedPosteriors(((2.0, 1.0),)),
            )

    def test_report_count_must_match(self):
        with pytest.raises(InsufficientDataError):
            fit_weights(
                [1, 0, 1],
                BetaFamily(1, 1),
                "bernoulli",
                ReportedPosteriors(((2.0, 1.0), (2.0, 2.0))),
            )

    def test_invalid_search_box(self):
        with pytest.raises(InvalidSearchBoxError):
            SearchBox(0.0, 1.0, 0.5, 2.0)
        with pytest.raises(InvalidSearchBoxError):
            SearchBox(2.0, 1.0, 0.5, 2.0)

    def test_infeasible_search_box_rejected(self):
        # a sub-1 prior parameter with a large prior weight drives the
        # updated kernel parameter non-positive at every candidate
        prior = BetaFamily(0.5, 0.5)
        box = SearchBox(2.1, 3.0, 0.5, 1.5)
        with pytest.raises(InvalidSearchBoxError, match="feasible"):
            fit_weights(
                [0, 0],
                prior,
                "bernoulli",
                ReportedPosteriors(((1.0, 2.0), (1.0, 3.0))),
                box,
            )
