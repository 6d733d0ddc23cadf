"""Tests for weighted posterior updating (scalar, sequential, time-varying)."""

import numpy as np
import pytest

from wupd.errors import (
    GridMismatchError,
    LengthMismatchError,
    NonPositiveWeightError,
)
from wupd.families import BetaFamily, NormalKnownVar, default_grid, to_grid
from wupd.grid import entropy, normalize, power_transform
from wupd.updating import (
    WeightSchedule,
    bernoulli_model,
    normal_model,
    sequential_weighted_posterior,
    time_varying_posterior,
    weighted_posterior,
)


def sup_diff(a, b):
    return float(np.max(np.abs(a.values - b.values)))


@pytest.fixture(scope="module")
def beta_grid():
    return default_grid(BetaFamily(1.0, 1.0), 2001)


@pytest.fixture(scope="module")
def normal_grid():
    return default_grid(NormalKnownVar(0.0, 1.0), 2001)


class TestWeightedPosterior:
    def test_bayes_special_case_beta_bernoulli(self, beta_grid):
        prior = to_grid(BetaFamily(1, 1), beta_grid)
        posterior = weighted_posterior(prior, bernoulli_model(beta_grid), 1, 1.0, 1.0)
        assert sup_diff(posterior, to_grid(BetaFamily(2, 1), beta_grid)) < 1e-6

    def test_weighted_beta_bernoulli_exponent_arithmetic(self, beta_grid):
        # one success: the exponent on theta is 2*1 + 3*1 and on (1-theta) 2*1,
        # matching the Beta(6, 3) kernel
        prior = to_grid(BetaFamily(2, 2), beta_grid)
        posterior = weighted_posterior(prior, bernoulli_model(beta_grid), 1, 2.0, 3.0)
        assert sup_diff(posterior, to_grid(BetaFamily(6, 3), beta_grid)) < 1e-6

    def test_weighted_normal_complete_the_square(self, normal_grid):
        # precision 1 + 2, mean (2 * 2) / 3
        prior = to_grid(NormalKnownVar(0.0, 1.0), normal_grid)
        posterior = weighted_posterior(
            prior, normal_model(normal_grid, 1.0), 2.0, 1.0, 2.0
        )
        target = to_grid(NormalKnownVar(4.0 / 3.0, 1.0 / 3.0), normal_grid)
        assert sup_diff(posterior, target) < 1e-6

    def test_grid_mismatch(self, beta_grid):
        prior = to_grid(BetaFamily(1, 1), beta_grid)
        other = bernoulli_model(default_grid(BetaFamily(1, 1), 99))
        with pytest.raises(GridMismatchError):
            weighted_posterior(prior, other, 1, 1.0, 1.0)

    def test_nonpositive_weights(self, beta_grid):
        prior = to_grid(BetaFamily(1, 1), beta_grid)
        model = bernoulli_model(beta_grid)
        with pytest.raises(NonPositiveWeightError):
            weighted_posterior(prior, model, 1, 0.0, 1.0)
        with pytest.raises(NonPositiveWeightError):
            weighted_posterior(prior, model, 1, 1.0, -0.5)

    def test_bayes_embedding_over_random_inputs(self, beta_grid):
        rng = np.random.default_rng(20)
        model = bernoulli_model(beta_grid)
        for _ in range(10):
            prior = normalize(rng.uniform(0.5, 2.0, len(beta_grid)), beta_grid)
            x = int(rng.integers(0, 2))
            weighted = weighted_posterior(prior, model, x, 1.0, 1.0)
            lik = model.density_of(x, (), beta_grid.points)
            bayes = normalize(lik * prior.values, beta_grid)
            assert sup_diff(weighted, bayes) < 1e-9


class TestSequential:
    def test_unit_weights_reproduce_batch_bayes(self, beta_grid):
        rng = np.random.default_rng(21)
        obs = (rng.random(30) < 0.6).astype(int)
        prior = to_grid(BetaFamily(1, 1), beta_grid)
        model = bernoulli_model(beta_grid)
        traj = sequential_weighted_posterior(prior, model, obs, WeightSchedule(1, 1))
        s, f = int(np.sum(obs)), int(np.sum(1 - obs))
        batch = to_grid(BetaFamily(1 + s, 1 + f), beta_grid)
        assert sup_diff(traj.final, batch) < 1e-9

    def test_per_observation_weights(self, beta_grid):
        # success weighted 1, failure weighted 2: kernel theta * (1-theta)**2
        prior = to_grid(BetaFamily(1, 1), beta_grid)
        model = bernoulli_model(beta_grid)
        traj = sequential_weighted_posterior(
            prior, model, [1, 0], WeightSchedule(1.0, [1.0, 2.0])
        )
        assert sup_diff(traj.final, to_grid(BetaFamily(2, 3), beta_grid)) < 1e-6

    def test_empty_observations(self, beta_grid):
        prior = to_grid(BetaFamily(2, 2), beta_grid)
        model = bernoulli_model(beta_grid)
        traj = sequential_weighted_posterior(prior, model, [], WeightSchedule(0.5, 1.0))
        assert len(traj.posteriors) == 1
        assert traj.observations == ()
        assert sup_diff(traj.posteriors[0], power_transform(prior, 0.5)) < 1e-12

    def test_trajectory_shape_and_entropies(self, beta_grid):
        prior = to_grid(BetaFamily(1, 1), beta_grid)
        model = bernoulli_model(beta_grid)
        traj = sequential_weighted_posterior(
            prior, model, [1, 1, 0], WeightSchedule(1.0, 1.0)
        )
        assert len(traj.posteriors) == 4
        assert len(traj.entropies) == 4
        assert traj.entropies[0] == pytest.approx(entropy(traj.posteriors[0]))

    def test_beta_count_mismatch(self, beta_grid):
        prior = to_grid(BetaFamily(1, 1), beta_grid)
        model = bernoulli_model(beta_grid)
        with pytest.raises(LengthMismatchError):
            sequential_weighted_posterior(
                prior, model, [1, 0, 1], WeightSchedule(1.0, [1.0, 2.0])
            )

    def test_order_invariance_under_constant_weights(self, beta_grid):
        rng = np.random.default_rng(22)
        obs = list((rng.random(20) < 0.4).astype(int))
        prior = to_grid(BetaFamily(2, 3), beta_grid)
        model = bernoulli_model(beta_grid)
        schedule = WeightSchedule(1.3, 0.8)
        forward = sequential_weighted_posterior(prior, model, obs, schedule)
        shuffled = list(obs)
        rng.shuffle(shuffled)
        permuted = sequential_weighted_posterior(prior, model, shuffled, schedule)
        assert sup_diff(forward.final, permuted.final) < 1e-9

    def test_factorization_matches_batch_weighted_product(self, beta_grid):
        rng = np.random.default_rng(23)
        obs = list((rng.random(12) < 0.5).astype(int))
        betas = list(rng.uniform(0.3, 2.0, 12))
        alpha = 1.7
        prior = to_grid(BetaFamily(2, 2), beta_grid)
        model = bernoulli_model(beta_grid)
        traj = sequential_weighted_posterior(
            prior, model, obs, WeightSchedule(alpha, betas)
        )
        log_acc = alpha * np.log(prior.values)
        for b, x in zip(betas, obs):
            log_acc += b * model.log_density(x, ())
        batch = normalize(np.exp(log_acc - np.max(log_acc)), beta_grid)
        assert sup_diff(traj.final, batch) < 1e-9

    def test_callable_alpha_realized_at_prefix_count(self, beta_grid):
        # entry k of the trajectory weights the prior by alpha(k)
        prior = to_grid(BetaFamily(3, 3), beta_grid)
        model = bernoulli_model(beta_grid)
        schedule = WeightSchedule(lambda t: 1.0 / (1.0 + t), 1.0)
        traj = sequential_weighted_posterior(prior, model, [1, 1], schedule)
        assert traj.alphas == (1.0, 0.5, pytest.approx(1.0 / 3.0))
        # entry 1: prior**(1/2) times one success likelihood
        log_ref = 0.5 * np.log(prior.values) + model.log_density(1, ())
        ref = normalize(np.exp(log_ref - np.max(log_ref)), beta_grid)
        assert sup_diff(traj.posteriors[1], ref) < 1e-12

    def test_long_run_does_not_underflow(self, beta_grid):
        rng = np.random.default_rng(24)
        obs = (rng.random(500) < 0.7).astype(int)
        prior = to_grid(BetaFamily(1, 1), beta_grid)
        model = bernoulli_model(beta_grid)
        traj = sequential_weighted_posterior(prior, model, obs, WeightSchedule(1, 1))
        assert np.all(traj.final.values > 0)


class TestTimeVarying:
    def test_unit_weights_reproduce_batch(self, beta_grid):
        rng = np.random.default_rng(25)
        obs = list((rng.random(15) < 0.5).astype(int))
        prior = to_grid(BetaFamily(1, 1), beta_grid)
        model = bernoulli_model(beta_grid)
        result = time_varying_posterior(
            prior, model, obs, lambda t: 1.0, lambda t: 1.0
        )
        traj = sequential_weighted_posterior(prior, model, obs, WeightSchedule(1, 1))
        assert sup_diff(result, traj.final) < 1e-9

    def test_joint_likelihood_reweighted(self, beta_grid):
        # two successes give joint likelihood theta**2; beta(2) = 2 raises it
        # to theta**4, i.e. the Beta(5, 1) kernel
        prior = to_grid(BetaFamily(1, 1), beta_grid)
        model = bernoulli_model(beta_grid)
        result = time_varying_posterior(
            prior, model, [1, 1], lambda t: 1.0, lambda t: 2.0
        )
        assert sup_diff(result, to_grid(BetaFamily(5, 1), beta_grid)) < 1e-6

    def test_no_observations_weights_prior_only(self, beta_grid):
        prior = to_grid(BetaFamily(2, 2), beta_grid)
        model = bernoulli_model(beta_grid)
        result = time_varying_posterior(
            prior, model, [], lambda t: 0.5, lambda t: 1.0
        )
        assert sup_diff(result, to_grid(BetaFamily(1.5, 1.5), beta_grid)) < 1e-6

    def test_weight_functions_receive_step_count(self, beta_grid):
        prior = to_grid(BetaFamily(1, 1), beta_grid)
        model = bernoulli_model(beta_grid)
        seen = []

        def alpha_of_t(t):
            seen.append(("alpha", t))
            return 1.0

        def beta_of_t(t):
            seen.append(("beta", t))
            return 1.0

        time_varying_posterior(prior, model, [1, 0, 1], alpha_of_t, beta_of_t)
        assert ("alpha", 3) in seen and ("beta", 3) in seen


class TestWeightSchedule:
    def test_scalar_callable_and_list_betas(self):
        assert WeightSchedule(1.0, 2.0).beta_at(5) == 2.0
        assert WeightSchedule(1.0, [1.0, 2.0, 3.0]).beta_at(2) == 2.0
        assert WeightSchedule(1.0, lambda j: 1.0 / j).beta_at(4) == 0.25

    def test_rejects_nonpositive_realized_weight(self):
        with pytest.raises(NonPositiveWeightError):
            WeightSchedule(1.0, lambda j: 1.0 - j).beta_at(2)
        with pytest.raises(NonPositiveWeightError):
            WeightSchedule(-1.0, 1.0).alpha_at(0)


class TestEntropyInterpretation:
    def test_larger_likelihood_weight_means_lower_entropy_factor(self, beta_grid):
        # hold the realized likelihood curve fixed; raising its weight makes
        # the normalized factor strictly less entropic
        model = bernoulli_model(beta_grid)
        curve = model.density_of(1, (), beta_grid.points)
        entropies = []
        for beta in (0.5, 1.0, 2.0, 3.5):
            factor = normalize(curve**beta, beta_grid)
            entropies.append(entropy(factor))
        assert all(a > b for a, b in zip(entropies, entropies[1:]))
