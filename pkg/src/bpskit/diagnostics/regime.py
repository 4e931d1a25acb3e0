"""Tail-regime classification from gradient and Hessian growth at large radii."""

from __future__ import annotations

import math

import numpy as np

from bpskit.sampler import ConstantRefresh, PositionDependentRefresh
from bpskit.targets import Target
from bpskit.transform import (
    ExponentialTransformConfig,
    PolynomialTransformConfig,
    default_polynomial_degree,
)

from .angular import c_d
from .diagnostics_models import RegimeAdvice, TailReading

TAIL_RADII = (10.0, 1e2, 1e3, 1e4)
SLOPE_TOLERANCE = 0.1
REGULAR_A_MARGIN = 1.1
REGULAR_B_MARGIN = 0.9
THIN_TAIL_POLICY = PositionDependentRefresh(lambda_ref=1.0, epsilon=0.5)


def _tail_direction(dimension: int) -> np.ndarray:
    return np.ones(dimension) / math.sqrt(dimension)


def _slope(radii: np.ndarray, values: np.ndarray) -> float:
    positive = values > 0.0
    if positive.sum() < 2:  # noqa: PLR2004
        return -math.inf
    slope, _ = np.polyfit(np.log(radii[positive]), np.log(values[positive]), 1)
    return float(slope)


def regular_tail_bounds(alpha1: float | None, alpha2: float | None, d: int) -> dict[str, float]:
    """Admissible refresh-rate bounds: above (2 alpha1 + 1)^2, or at most alpha2 / c_d."""
    bounds: dict[str, float] = {}
    if alpha1 is not None:
        bounds["lambda_lower_bound"] = (2.0 * alpha1 + 1.0) ** 2
    if alpha2 is not None:
        bounds["lambda_upper_bound"] = alpha2 / c_d(d)
    return bounds


def classify_regime(target: Target, radii: tuple[float, ...] = TAIL_RADII) -> RegimeAdvice:
    """Read the tails of a target and map them to a sampler configuration.

    The fitted slope s of log |grad U| against log |x| decides the regime:
    s > 1 is thin, 0 < s <= 1 regular-a, s = 0 regular-b, s = -1 with
    <x, grad U> > d thick-i and -1 < s < 0 thick-ii. Anything else is
    returned as "unclassified" together with the readings.
    """
    d = target.dimension
    direction = _tail_direction(d)
    r = np.asarray(radii, dtype=float)
    grads = [target.grad(radius * direction) for radius in r]
    grad_norm = np.array([float(np.linalg.norm(g)) for g in grads])
    hess_norm = np.array(
        [float(np.linalg.norm(target.hessian_or_finite_difference(radius * direction), 2)) for radius in r]
    )
    inner = np.array([float(radius * direction @ g) for radius, g in zip(r, grads, strict=True)])

    s = _slope(r, grad_norm)
    h = _slope(r, hess_norm)
    readings = [
        TailReading(
            radius=float(radius),
            grad_norm=float(gn),
            hessian_norm=float(hn),
            radial_gradient=float(radius * gn),
            inner_product=float(ip),
            normalized_gradient=float(gn * radius ** (-s)) if math.isfinite(s) else 0.0,
        )
        for radius, gn, hn, ip in zip(r, grad_norm, hess_norm, inner, strict=True)
    ]
    common = {"gradient_slope": s, "hessian_slope": h, "readings": readings}

    if s > 1.0 + SLOPE_TOLERANCE:
        return RegimeAdvice(regime="thin", recommended_policy=THIN_TAIL_POLICY, **common)
    if SLOPE_TOLERANCE < s <= 1.0 + SLOPE_TOLERANCE and h <= SLOPE_TOLERANCE:
        alpha1 = float(np.max(hess_norm))
        bounds = regular_tail_bounds(alpha1, None, d)
        return RegimeAdvice(
            regime="regular-a",
            recommended_policy=ConstantRefresh(
                lambda_ref=REGULAR_A_MARGIN * bounds["lambda_lower_bound"]
            ),
            alpha1=alpha1,
            **bounds,
            **common,
        )
    if abs(s) <= SLOPE_TOLERANCE:
        alpha2 = float(np.min(grad_norm)) / 2.0
        bounds = regular_tail_bounds(None, alpha2, d)
        return RegimeAdvice(
            regime="regular-b",
            recommended_policy=ConstantRefresh(
                lambda_ref=REGULAR_B_MARGIN * bounds["lambda_upper_bound"]
            ),
            alpha2=alpha2,
            **bounds,
            **common,
        )
    if abs(s + 1.0) <= SLOPE_TOLERANCE and inner[-1] > d:
        return RegimeAdvice(
            regime="thick-i",
            recommended_transform=ExponentialTransformConfig(b=1.0),
            **common,
        )
    if -1.0 + SLOPE_TOLERANCE < s < -SLOPE_TOLERANCE:
        beta = s + 1.0
        return RegimeAdvice(
            regime="thick-ii",
            recommended_transform=PolynomialTransformConfig(
                R=1.0, p=default_polynomial_degree(beta)
            ),
            recommended_policy=THIN_TAIL_POLICY,
            tail_beta=beta,
            **common,
        )
    return RegimeAdvice(regime="unclassified", **common)
