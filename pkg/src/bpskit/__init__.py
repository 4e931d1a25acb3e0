"""bpskit: Bouncy Particle Sampler simulation, estimation and ergodicity diagnostics."""

from bpskit.diagnostics import DriftVerificationService, classify_regime, verify_drift
from bpskit.estimators import path_average, pooled_path_average
from bpskit.logging import JsonLoggingService, LoggingService
from bpskit.sampler import (
    BouncyParticleSampler,
    ConstantRefresh,
    HorizonConfig,
    PositionDependentRefresh,
    Trajectory,
    chain_generator,
)
from bpskit.targets import TargetConfig, build_target
from bpskit.transform import TransformedTarget, build_transform

__version__ = "0.1.0"

__all__ = [
    "BouncyParticleSampler",
    "ConstantRefresh",
    "DriftVerificationService",
    "HorizonConfig",
    "JsonLoggingService",
    "LoggingService",
    "PositionDependentRefresh",
    "TargetConfig",
    "Trajectory",
    "TransformedTarget",
    "__version__",
    "build_target",
    "build_transform",
    "chain_generator",
    "classify_regime",
    "path_average",
    "pooled_path_average",
    "verify_drift",
]
