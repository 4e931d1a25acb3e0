"""Built-in target families and their config records."""

from .target_models import TargetConfig, TargetParameters
from .targets import (
    GaussianTarget,
    GeneralizedGaussianTarget,
    GradientEvaluation,
    StudentTTarget,
    Target,
    build_target,
)

__all__ = [
    "GaussianTarget",
    "GeneralizedGaussianTarget",
    "GradientEvaluation",
    "StudentTTarget",
    "Target",
    "TargetConfig",
    "TargetParameters",
    "build_target",
]
