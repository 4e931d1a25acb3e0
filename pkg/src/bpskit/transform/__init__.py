"""Isotropic change-of-variable transforms for thick-tailed targets."""

from .isotropic import (
    ExponentialTransform,
    IsotropicTransform,
    PolynomialTransform,
    RadialValues,
    build_transform,
)
from .mapping import TransformCheckReport, join_error, map_trajectory, run_transform_checks
from .transform_models import (
    ExponentialTransformConfig,
    PolynomialTransformConfig,
    TransformConfig,
    default_polynomial_degree,
)
from .transformed_target import TransformedTarget, transformed_grad, transformed_potential

__all__ = [
    "ExponentialTransform",
    "ExponentialTransformConfig",
    "IsotropicTransform",
    "PolynomialTransform",
    "PolynomialTransformConfig",
    "RadialValues",
    "TransformCheckReport",
    "TransformConfig",
    "TransformedTarget",
    "build_transform",
    "default_polynomial_degree",
    "join_error",
    "map_trajectory",
    "run_transform_checks",
    "transformed_grad",
    "transformed_potential",
]
