"""Power transforms disperse or concentrate a density, provably.

Raising a density to gamma in (0,1) and renormalizing compresses every
density ratio toward 1 (a monotone dispersion); gamma > 1 exaggerates the
ratios (a monotone concentration). Either way the argmax never moves. The
classifier checks all grid-point pairs; the crossing-bounds report brackets
the level at which the two curves trade places.
"""

import numpy as np

from wupd import (
    NormalKnownVar,
    classify_relation,
    crossing_bounds,
    default_grid,
    entropy_ordering,
    mode_points,
    power_transform,
    to_grid,
    verify_higher_highs,
    verify_max_dominance,
)

base = to_grid(NormalKnownVar(0.0, 1.0), default_grid(NormalKnownVar(0.0, 1.0), 2001))

for gamma in (0.5, 2.0):
    other = power_transform(base, gamma)
    verdict = classify_relation(base, other)
    print(f"gamma = {gamma}: transform is a {verdict.kind.value} of the base")
    print(f"  modes unchanged: {mode_points(other) == mode_points(base)}")
    ordering = entropy_ordering(base, other)
    print(
        f"  entropy {ordering.base_entropy:.4f} -> {ordering.other_entropy:.4f} "
        f"({ordering.order.value})"
    )
    if gamma < 1:
        concentrated, dispersed = base, other
    else:
        concentrated, dispersed = other, base
    bounds = crossing_bounds(concentrated, dispersed)
    print(
        f"  curves trade places near level {bounds.threshold:.4f} "
        f"(bracket [{bounds.lower:.4f}, {bounds.upper:.4f}])"
    )
    print(f"  higher-highs/lower-lows: {verify_higher_highs(concentrated, dispersed).holds}")
    print(f"  peak dominance: {verify_max_dominance(concentrated, dispersed)}\n")

print(
    "The bracket endpoints agree to the grid spacing because a dispersion\n"
    "pair crosses at a single density level; for the standard normal against\n"
    "its half-exponent transform that level is 1/sqrt(8*pi) = "
    f"{1.0 / np.sqrt(8 * np.pi):.4f}."
)
