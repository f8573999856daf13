"""Error metrics comparing estimates against ground truth."""

from __future__ import annotations

import numpy as np

from .distribution import Distribution


def ks_d_statistic(estimate: Distribution, truth: Distribution) -> float:
    """Kolmogorov-Smirnov D: the largest CDF gap over the union support.

    Both arguments are mass functions over integer keys; their step CDFs
    are compared at every key either of them touches.
    """
    keys = np.union1d(estimate.support(), truth.support())
    cdf_est = np.cumsum([estimate.mass(k) for k in keys])
    cdf_truth = np.cumsum([truth.mass(k) for k in keys])
    # Accumulated rounding can push the gap a few ulp past the exact bound.
    return min(float(np.abs(cdf_est - cdf_truth).max()), 1.0)


def kl_divergence(estimate: Distribution, truth: Distribution,
                  epsilon: float = 1e-10) -> float:
    """KL divergence D(estimate || truth) in nats, with smoothing.

    The reference gets ``epsilon`` added at every union-support key and is
    renormalized, so estimate mass outside the truth support stays finite.
    Zero-mass estimate keys contribute nothing.

    Raises:
        ValueError: for a non-positive epsilon.
    """
    if epsilon <= 0.0:
        raise ValueError("epsilon must be positive")
    keys = np.union1d(estimate.support(), truth.support())
    p = np.array([estimate.mass(k) for k in keys])
    q = np.array([truth.mass(k) for k in keys])
    q = (q + epsilon) / (q.sum() + epsilon * keys.size)
    positive = p > 0.0
    return float((p[positive] * np.log(p[positive] / q[positive])).sum())


def rrmse(estimates, truth: float) -> float:
    """Relative root-mean-square error of scalar estimates against truth.

    Raises:
        ValueError: on an empty estimate list or zero truth, which leaves
            the relative error undefined.
    """
    values = np.asarray(estimates, dtype=float)
    if values.size == 0:
        raise ValueError("rrmse needs at least one estimate")
    if truth == 0.0:
        raise ValueError("rrmse undefined for zero truth")
    return float(np.sqrt(np.mean((values - truth) ** 2)) / abs(truth))


def total_variation(estimate: Distribution, truth: Distribution) -> float:
    """Total variation distance between two mass functions."""
    return estimate.total_variation(truth)
