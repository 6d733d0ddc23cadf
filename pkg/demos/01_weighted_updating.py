"""Weighted updating basics: bend Bayes' rule with exponents.

A Bayesian multiplies likelihood and prior. A weighted updater raises them
to positive powers first:

    posterior ~ likelihood**beta * prior**alpha

beta != 1 treats the data as more (beta > 1) or less (beta < 1) informative
than it is; alpha does the same for the prior. This script updates the same
coin belief three ways and prints what changes.
"""

from wupd import (
    BetaFamily,
    default_grid,
    entropy,
    moments,
    to_grid,
    weighted_posterior,
)
from wupd.updating import bernoulli_model

grid = default_grid(BetaFamily(1, 1), 2001)
prior = to_grid(BetaFamily(2, 2), grid)
model = bernoulli_model(grid)

print("prior: Beta(2,2); observation: one success\n")
print(f"{'updater':>24} {'mean':>8} {'variance':>10} {'entropy':>9}")
for label, alpha, beta in [
    ("Bayes (alpha=beta=1)", 1.0, 1.0),
    ("evidence zealot (b=3)", 1.0, 3.0),
    ("evidence skeptic (b=.3)", 1.0, 0.3),
    ("prior neglect (a=.3)", 0.3, 1.0),
    ("prior devotee (a=3)", 3.0, 1.0),
]:
    post = weighted_posterior(prior, model, 1, alpha, beta)
    m = moments(post)
    print(f"{label:>24} {m.mean:8.4f} {m.variance:10.5f} {entropy(post):9.4f}")

print(
    "\nOverweighting either ingredient concentrates the posterior (lower"
    "\nentropy); underweighting leaves it more spread out. The mean shifts"
    "\ntoward whichever ingredient got the larger exponent."
)
