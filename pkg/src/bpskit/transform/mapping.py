"""Mapping sampled paths back to original coordinates, and transform self-checks."""

from __future__ import annotations

import numpy as np
from pydantic import BaseModel, Field

from bpskit.numerics import FloatArray, central_gradient, central_jacobian, relative_error
from bpskit.sampler import Trajectory, sample_velocity
from bpskit.targets import Target

from .isotropic import IsotropicTransform
from .transformed_target import TransformedTarget

GRADIENT_TOLERANCE = 1e-5
DETERMINANT_TOLERANCE = 1e-5
JOIN_TOLERANCE = 1e-8
ROUND_TRIP_TOLERANCE = 1e-10
CHECK_RADIUS_RANGE = (0.2, 5.0)
BRANCH_CLEARANCE = 1e-3
JOIN_OFFSET = 1e-9


def map_trajectory(
    transform: IsotropicTransform,
    trajectory: Trajectory,
    sample_times: FloatArray | list[float],
) -> list[tuple[float, FloatArray]]:
    """Evaluate x(t) = h(y(t)) at the requested times.

    The mapped path is not piecewise linear; only the sampled points are returned.

    Raises:
        TrajectoryError: If a time lies outside the trajectory span
    """
    times = np.asarray(sample_times, dtype=float)
    ys = trajectory.positions_at(times)
    return [(float(t), transform.apply(y)) for t, y in zip(times, ys, strict=True)]


class TransformCheckReport(BaseModel):
    """Worst relative errors of the transform self-checks."""

    transform: str = Field(..., description="Transform kind")
    points: int = Field(..., description="Number of random points checked")
    gradient_error: float = Field(..., description="grad U_h vs finite differences of U_h")
    jacobian_error: float = Field(..., description="Jacobian formula vs finite differences")
    determinant_error: float = Field(..., description="exp(log det) vs numeric determinant")
    log_det_gradient_error: float = Field(..., description="log det gradient vs finite differences")
    join_error: float = Field(..., description="Largest jump of f, f', f'' at branch points")
    round_trip_error: float = Field(..., description="Scaled error of apply(invert(x)) - x")
    passed: bool = Field(..., description="Whether every error is within tolerance")


def _check_points(
    transform: IsotropicTransform,
    dimension: int,
    n_points: int,
    rng: np.random.Generator,
) -> list[FloatArray]:
    lo, hi = CHECK_RADIUS_RANGE
    points: list[FloatArray] = []
    while len(points) < n_points:
        r = float(rng.uniform(lo, hi))
        if any(abs(r - b) < BRANCH_CLEARANCE for b in transform.branch_points):
            continue
        points.append(r * sample_velocity(rng, dimension))
    return points


def join_error(transform: IsotropicTransform) -> float:
    """Largest relative mismatch of (f, f', f'') across the branch points."""
    worst = 0.0
    for point in transform.branch_points:
        left = np.array(transform.radial(point))
        right = np.array(transform.radial(point * (1.0 + JOIN_OFFSET)))
        worst = max(worst, relative_error(right, left))
    return worst


def run_transform_checks(
    base: Target,
    transform: IsotropicTransform,
    rng: np.random.Generator,
    n_points: int = 100,
) -> TransformCheckReport:
    """Finite-difference, determinant, join and round-trip checks on random points."""
    target = TransformedTarget(base, transform)
    grad_err = jac_err = det_err = ld_grad_err = round_err = 0.0
    for y in _check_points(transform, base.dimension, n_points, rng):
        grad_err = max(
            grad_err, relative_error(target.grad(y), central_gradient(target.potential, y))
        )
        numeric_jac = central_jacobian(transform.apply, y)
        jac_err = max(jac_err, relative_error(transform.jacobian(y), numeric_jac))
        log_det, log_det_grad = transform.log_det_jacobian(y)
        det_err = max(
            det_err, relative_error(np.exp(log_det), float(np.linalg.det(numeric_jac)))
        )
        ld_grad_err = max(
            ld_grad_err,
            relative_error(
                log_det_grad, central_gradient(lambda z: transform.log_det_jacobian(z)[0], y)
            ),
        )
        x = transform.apply(y)
        mismatch = float(np.linalg.norm(transform.apply(transform.invert(x)) - x))
        round_err = max(round_err, mismatch / (1.0 + float(np.linalg.norm(x))))

    joins = join_error(transform)
    passed = (
        grad_err < GRADIENT_TOLERANCE
        and jac_err < GRADIENT_TOLERANCE
        and det_err < DETERMINANT_TOLERANCE
        and ld_grad_err < GRADIENT_TOLERANCE
        and joins < JOIN_TOLERANCE
        and round_err < ROUND_TRIP_TOLERANCE
    )
    return TransformCheckReport(
        transform=transform.kind,
        points=n_points,
        gradient_error=grad_err,
        jacobian_error=jac_err,
        determinant_error=det_err,
        log_det_gradient_error=ld_grad_err,
        join_error=joins,
        round_trip_error=round_err,
        passed=passed,
    )
