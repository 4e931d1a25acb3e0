"""Lyapunov function and drift ratios of the sampler's generator.

With V(x, v) = exp(U(x)/2) / sqrt(total_rate(x, -v)), the functions here
evaluate 2 (LV)(x, v) / V(x, v) in closed form: a transport term along v, the
bounce term, and the refresh term whose sphere average reduces to F(u, d).
Negative values outside a ball certify geometric drift on the evaluated grid.
"""

from __future__ import annotations

import math

import numpy as np

from bpskit.numerics import FloatArray
from bpskit.sampler import (
    ConstantRefresh,
    PositionDependentRefresh,
    refresh_rate,
    refresh_rate_gradient,
)
from bpskit.targets import Target

from .angular import F

TANGENT_TOLERANCE = 1e-12
MAX_LOG_FLOAT = 709.0


def log_lyapunov(
    target: Target,
    policy: ConstantRefresh | PositionDependentRefresh,
    x: FloatArray,
    v: FloatArray,
) -> float:
    """log V(x, v) = U(x)/2 - log(total_rate(x, -v))/2."""
    reverse = refresh_rate(policy, target, x) + max(0.0, -float(target.grad(x) @ v))
    return 0.5 * target.potential(x) - 0.5 * math.log(reverse)


def lyapunov(
    target: Target,
    policy: ConstantRefresh | PositionDependentRefresh,
    x: FloatArray,
    v: FloatArray,
) -> float:
    """V(x, v) = exp(U(x)/2) / sqrt(total_rate(x, -v)); overflows to inf for large U."""
    value = log_lyapunov(target, policy, x, v)
    return math.exp(value) if value < MAX_LOG_FLOAT else math.inf


def drift_ratio(
    target: Target,
    policy: ConstantRefresh | PositionDependentRefresh,
    x: FloatArray,
    v: FloatArray,
    *,
    allow_finite_difference: bool = True,
) -> float:
    """Return 2 (LV)/V at (x, v) for either refresh policy.

    Args:
        target: Target potential
        policy: Refresh policy
        x: Position
        v: Unit velocity
        allow_finite_difference: Permit a finite-difference Hessian when the target has none

    Raises:
        UnsupportedCapabilityError: If a Hessian is needed but unavailable
    """
    x = np.asarray(x, dtype=float)
    v = np.asarray(v, dtype=float)
    grad = target.grad(x)
    hess = target.hessian_or_finite_difference(x, allow_finite_difference=allow_finite_difference)
    a = float(grad @ v)
    g_norm = float(np.linalg.norm(grad))
    curvature = float(v @ hess @ v)
    rate = refresh_rate(policy, target, x)
    rate_slope = float(refresh_rate_gradient(policy, target, x) @ v)

    if abs(a) <= TANGENT_TOLERANCE * g_norm:
        transport = -(rate_slope + max(0.0, -curvature)) / rate
        reverse = rate
        bounce = 0.0
    elif a > 0.0:
        transport = a - rate_slope / rate
        reverse = rate
        bounce = 2.0 * a * (math.sqrt(rate / (rate + a)) - 1.0)
    else:
        reverse = rate - a
        transport = a - (rate_slope - curvature) / reverse
        bounce = 0.0

    sphere = F(g_norm / rate, target.dimension)
    refresh = 2.0 * rate * (math.sqrt(reverse / rate) * (0.5 + sphere) - 1.0)
    return transport + bounce + refresh


def drift_ratio_constant(
    target: Target,
    lambda_ref: float,
    x: FloatArray,
    v: FloatArray,
    *,
    allow_finite_difference: bool = True,
) -> float:
    """Drift ratio under constant refresh at rate lambda_ref."""
    return drift_ratio(
        target,
        ConstantRefresh(lambda_ref=lambda_ref),
        x,
        v,
        allow_finite_difference=allow_finite_difference,
    )


def drift_ratio_varying(
    target: Target,
    policy: PositionDependentRefresh,
    x: FloatArray,
    v: FloatArray,
    *,
    allow_finite_difference: bool = True,
) -> float:
    """Drift ratio under the position-dependent refresh policy."""
    return drift_ratio(target, policy, x, v, allow_finite_difference=allow_finite_difference)
