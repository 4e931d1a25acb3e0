"""Path-average, jump-chain and mapped estimators with batch-means error bars."""

from __future__ import annotations

import math
from collections.abc import Sequence

import numpy as np

from bpskit.exceptions import EstimationError
from bpskit.numerics import FloatArray
from bpskit.sampler import (
    ConstantRefresh,
    PositionDependentRefresh,
    Trajectory,
    refresh_rate,
)
from bpskit.targets import Target
from bpskit.transform import IsotropicTransform

from .estimator_models import MIN_BATCHES, EstimateReport
from .path_integrals import DEFAULT_QUADRATURE_ORDER, batch_integrals
from .test_functions import TestFunction, compose

# Error messages
ERROR_EMPTY_TRAJECTORY = "Trajectory has zero duration"
ERROR_TOO_FEW_BATCHES = f"Batch-means variance needs at least {MIN_BATCHES} batches"
ERROR_NO_JUMPS = "Jump-chain estimate needs at least one bounce or refresh event"
ERROR_NO_TRAJECTORIES = "No trajectories supplied"


def default_batch_count(duration: float) -> int:
    """Square-root batching: floor(sqrt(T)) batches, at least 2."""
    return max(MIN_BATCHES, math.floor(math.sqrt(duration)))


def batch_means_variance(batch_means: Sequence[float] | FloatArray, batch_length: float) -> float:
    """Asymptotic variance estimate batch_length * sample variance (n - 1 denominator).

    Raises:
        EstimationError: If fewer than two batch means are supplied
    """
    means = np.asarray(batch_means, dtype=float)
    if means.size < MIN_BATCHES:
        raise EstimationError(ERROR_TOO_FEW_BATCHES, "batch_means_variance", batches=means.size)
    return float(batch_length * np.var(means, ddof=1))


def _effective_sample_size(duration: float, variance: float, sigma2: float) -> float:
    if sigma2 <= 0.0:
        return duration
    return duration * max(variance, 0.0) / sigma2


def _time_averages(
    trajectory: Trajectory,
    g: TestFunction,
    batches: int,
    order: int,
    *,
    force_quadrature: bool,
) -> tuple[FloatArray, FloatArray]:
    """Per-batch integrals of g and of g^2."""
    first = batch_integrals(
        trajectory, g, batches, order=order, force_quadrature=force_quadrature
    )
    second = batch_integrals(
        trajectory, g.squared(), batches, order=order, force_quadrature=force_quadrature
    )
    return first, second


def path_average(
    trajectory: Trajectory,
    g: TestFunction,
    *,
    batches: int | None = None,
    order: int = DEFAULT_QUADRATURE_ORDER,
    force_quadrature: bool = False,
) -> EstimateReport:
    """Time average of g along the path with a batch-means variance.

    Args:
        trajectory: Recorded path
        g: Test function
        batches: Batch count; floor(sqrt(T)) (at least 2) when omitted
        order: Gauss-Legendre order for non-polynomial integrands
        force_quadrature: Use quadrature even where closed forms exist

    Raises:
        EstimationError: If the trajectory has zero duration
    """
    duration = trajectory.duration
    if duration <= 0.0:
        raise EstimationError(ERROR_EMPTY_TRAJECTORY, "path_average")
    count = default_batch_count(duration) if batches is None else batches
    if count < MIN_BATCHES:
        raise EstimationError(ERROR_TOO_FEW_BATCHES, "path_average", batches=count)
    batch_len = duration / count
    sums, sums_sq = _time_averages(
        trajectory, g, count, order, force_quadrature=force_quadrature
    )
    estimate = float(np.sum(sums)) / duration
    sigma2 = batch_means_variance(sums / batch_len, batch_len)
    variance = float(np.sum(sums_sq)) / duration - estimate**2
    return EstimateReport(
        estimate=estimate,
        sigma2=sigma2,
        batches=count,
        batch_len=batch_len,
        ess=_effective_sample_size(duration, variance, sigma2),
    )


def pooled_path_average(
    trajectories: Sequence[Trajectory],
    g: TestFunction,
    *,
    order: int = DEFAULT_QUADRATURE_ORDER,
    force_quadrature: bool = False,
) -> EstimateReport:
    """Path average pooled over chains.

    Each chain is cut into its own square-root batches and all batch means
    enter one duration-weighted batch-means variance.
    """
    if not trajectories:
        raise EstimationError(ERROR_NO_TRAJECTORIES, "pooled_path_average")
    means: list[FloatArray] = []
    lengths: list[FloatArray] = []
    total = total_sq = duration = 0.0
    for trajectory in trajectories:
        if trajectory.duration <= 0.0:
            raise EstimationError(ERROR_EMPTY_TRAJECTORY, "pooled_path_average")
        count = default_batch_count(trajectory.duration)
        batch_len = trajectory.duration / count
        sums, sums_sq = _time_averages(
            trajectory, g, count, order, force_quadrature=force_quadrature
        )
        means.append(sums / batch_len)
        lengths.append(np.full(count, batch_len))
        total += float(np.sum(sums))
        total_sq += float(np.sum(sums_sq))
        duration += trajectory.duration

    all_means = np.concatenate(means)
    all_lengths = np.concatenate(lengths)
    estimate = total / duration
    sigma2 = float(np.sum(all_lengths * (all_means - estimate) ** 2) / (all_means.size - 1))
    return EstimateReport(
        estimate=estimate,
        sigma2=sigma2,
        batches=int(all_means.size),
        batch_len=float(np.mean(all_lengths)),
        ess=_effective_sample_size(duration, total_sq / duration - estimate**2, sigma2),
    )


def jump_chain_weights(
    trajectory: Trajectory,
    target: Target,
    policy: ConstantRefresh | PositionDependentRefresh,
) -> tuple[FloatArray, FloatArray, FloatArray]:
    """Post-jump positions, velocities and weights 1 / total_rate(x, -v).

    Raises:
        EstimationError: If the trajectory has no bounce or refresh events
    """
    mask = trajectory.jump_mask
    if not np.any(mask):
        raise EstimationError(ERROR_NO_JUMPS, "jump_chain_estimate")
    xs = trajectory.positions[mask]
    vs = trajectory.velocities[mask]
    weights = np.empty(xs.shape[0])
    for k, (x, v) in enumerate(zip(xs, vs, strict=True)):
        reverse_bounce = max(0.0, -float(target.grad(x) @ v))
        weights[k] = 1.0 / (refresh_rate(policy, target, x) + reverse_bounce)
    return xs, vs, weights


def jump_chain_estimate(
    trajectory: Trajectory,
    g: TestFunction,
    target: Target,
    policy: ConstantRefresh | PositionDependentRefresh,
) -> float:
    """Self-normalized estimate from event-time states.

    Each post-jump state (x, v) is weighted by 1 / total_rate(x, -v); the
    weighted jump chain has the target as its marginal.
    """
    xs, vs, weights = jump_chain_weights(trajectory, target, policy)
    values = g.evaluate(xs, vs)
    return float(np.sum(weights * values) / np.sum(weights))


def mapped_estimate(
    transform: IsotropicTransform,
    trajectory: Trajectory,
    g: TestFunction,
    *,
    batches: int | None = None,
    order: int = DEFAULT_QUADRATURE_ORDER,
) -> EstimateReport:
    """Path average of y -> g(h(y), v) over a trajectory sampled in y coordinates."""
    return path_average(
        trajectory,
        compose(g, transform.apply_many),
        batches=batches,
        order=order,
        force_quadrature=True,
    )
