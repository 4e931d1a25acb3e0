"""Velocity refreshment, bounce reflection and the jump rates of the process."""

from __future__ import annotations

import numpy as np

from bpskit.exceptions import ZeroGradientError
from bpskit.numerics import FloatArray
from bpskit.targets import Target

from .sampler_models import ConstantRefresh, PositionDependentRefresh

# Error messages
ERROR_ZERO_GRADIENT = "Cannot reflect against a zero gradient; refresh instead"


def sample_velocity(rng: np.random.Generator, dimension: int) -> FloatArray:
    """Draw a velocity uniformly on the unit sphere."""
    while True:
        z = rng.standard_normal(dimension)
        norm = float(np.linalg.norm(z))
        if norm > 0.0:
            return z / norm


def reflect(gradient: FloatArray, v: FloatArray) -> FloatArray:
    """Mirror v across the hyperplane orthogonal to the gradient.

    Raises:
        ZeroGradientError: If the gradient vanishes
    """
    g = np.asarray(gradient, dtype=float)
    g2 = float(g @ g)
    if g2 == 0.0:
        raise ZeroGradientError(ERROR_ZERO_GRADIENT, "reflect")
    out = v - (2.0 * float(g @ v) / g2) * g
    return out / np.linalg.norm(out)


def bounce_rate(target: Target, x: FloatArray, v: FloatArray) -> float:
    """Positive part of the directional derivative <grad U(x), v>."""
    return max(0.0, float(target.grad(x) @ v))


def _radial_damping(x: FloatArray, epsilon: float) -> tuple[float, float]:
    r = float(np.linalg.norm(x))
    if r <= 1.0:
        return 1.0, r
    return r**-epsilon, r


def refresh_rate(
    policy: ConstantRefresh | PositionDependentRefresh,
    target: Target,
    x: FloatArray,
) -> float:
    """Refresh intensity at x."""
    if isinstance(policy, ConstantRefresh):
        return policy.lambda_ref
    damping, _ = _radial_damping(x, policy.epsilon)
    return policy.lambda_ref + float(np.linalg.norm(target.grad(x))) * damping


def refresh_rate_gradient(
    policy: ConstantRefresh | PositionDependentRefresh,
    target: Target,
    x: FloatArray,
) -> FloatArray:
    """Gradient of the refresh intensity in x.

    For the position-dependent policy this is m grad|grad U| + |grad U| grad m with
    m = max(1, |x|^eps)^-1 and grad|grad U| = H grad U / |grad U|.
    """
    x = np.asarray(x, dtype=float)
    if isinstance(policy, ConstantRefresh):
        return np.zeros_like(x)
    g = target.grad(x)
    g_norm = float(np.linalg.norm(g))
    if g_norm == 0.0:
        grad_norm = np.zeros_like(x)
    else:
        grad_norm = target.hessian_or_finite_difference(x) @ g / g_norm
    damping, r = _radial_damping(x, policy.epsilon)
    if r <= 1.0:
        return grad_norm
    return damping * grad_norm - policy.epsilon * g_norm * r ** (-policy.epsilon - 2.0) * x


def total_rate(
    policy: ConstantRefresh | PositionDependentRefresh,
    target: Target,
    x: FloatArray,
    v: FloatArray,
) -> float:
    """Total jump intensity: refresh rate plus bounce rate."""
    return refresh_rate(policy, target, x) + bounce_rate(target, x, v)


def rates_at(
    policy: ConstantRefresh | PositionDependentRefresh,
    target: Target,
    x: FloatArray,
    v: FloatArray,
) -> tuple[float, float]:
    """Return (total rate, bounce rate) at (x, v) from a single gradient evaluation."""
    g = target.grad(x)
    bounce = max(0.0, float(g @ v))
    if isinstance(policy, ConstantRefresh):
        return policy.lambda_ref + bounce, bounce
    damping, _ = _radial_damping(x, policy.epsilon)
    return policy.lambda_ref + float(np.linalg.norm(g)) * damping + bounce, bounce
