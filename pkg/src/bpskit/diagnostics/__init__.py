"""Ergodicity diagnostics: angular constants, drift ratios and tail-regime advice."""

from .angular import F, angle_norm, angle_norm_by_quadrature, c_d, gamma_d, gamma_d_by_quadrature
from .diagnostics_models import (
    DriftGridConfig,
    DriftReport,
    RadiusCandidate,
    RegimeAdvice,
    ShellReport,
    TailReading,
)
from .drift import (
    drift_ratio,
    drift_ratio_constant,
    drift_ratio_varying,
    log_lyapunov,
    lyapunov,
)
from .drift_service import DriftVerificationService, verify_drift
from .grids import sphere_directions, velocity_angles
from .quadrature import adaptive_gauss_legendre, singular_cosine_integral
from .regime import classify_regime, regular_tail_bounds

__all__ = [
    "DriftGridConfig",
    "DriftReport",
    "DriftVerificationService",
    "F",
    "RadiusCandidate",
    "RegimeAdvice",
    "ShellReport",
    "TailReading",
    "adaptive_gauss_legendre",
    "angle_norm",
    "angle_norm_by_quadrature",
    "c_d",
    "classify_regime",
    "drift_ratio",
    "drift_ratio_constant",
    "drift_ratio_varying",
    "gamma_d",
    "gamma_d_by_quadrature",
    "log_lyapunov",
    "lyapunov",
    "regular_tail_bounds",
    "singular_cosine_integral",
    "sphere_directions",
    "verify_drift",
    "velocity_angles",
]
