"""Potential functions for the built-in target families.

A target stores the potential U of the density exp(-U(x)), its gradient, an
optional analytic Hessian and the capability flags the event-time simulator
and the diagnostics branch on. Isotropic families additionally expose their
radial profile evaluated at log-radius so that transformed potentials stay
finite far out in the tails.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import ClassVar, NamedTuple

import numpy as np
from scipy.special import expit

from bpskit.exceptions import (
    ConfigurationError,
    DimensionMismatchError,
    UnsupportedCapabilityError,
)
from bpskit.numerics import FloatArray, finite_difference_hessian

from .target_models import MIN_DIMENSION, TargetConfig, TargetParameters

# Error messages
ERROR_DIMENSION_TOO_SMALL = f"Target dimension must be at least {MIN_DIMENSION}"
ERROR_NO_HESSIAN = "Target '{family}' does not provide an analytic Hessian"
ERROR_NOT_AFFINE = "Target '{family}' does not have an affine directional rate"
ERROR_NOT_ISOTROPIC = "Target '{family}' is not isotropic"
ERROR_HESSIAN_AT_ORIGIN = "Hessian of |x|^beta is unbounded at the origin for beta < 2"


class GradientEvaluation(NamedTuple):
    """Gradient value plus a flag raised at declared singular points."""

    value: FloatArray
    degenerate: bool


class Target(ABC):
    """Interface shared by every potential the sampler can run on."""

    family: ClassVar[str] = "abstract"
    has_hessian: ClassVar[bool] = True
    affine_directional_rate: ClassVar[bool] = False

    def __init__(self, dimension: int) -> None:
        """Initialize the target.

        Args:
            dimension: State-space dimension, at least 2
        """
        if dimension < MIN_DIMENSION:
            raise ConfigurationError(ERROR_DIMENSION_TOO_SMALL, "target", dimension=dimension)
        self.dimension = dimension

    # ------------------------------------------------------------------
    # Capabilities
    # ------------------------------------------------------------------
    @property
    def convex(self) -> bool:
        """Whether U is convex, making directional rates nondecreasing along rays."""
        return False

    @property
    def nonsmooth_radii(self) -> tuple[float, ...]:
        """Radii where second derivatives may jump."""
        return ()

    @property
    def is_isotropic(self) -> bool:
        """Whether U depends on |x| only."""
        return False

    @property
    def config(self) -> TargetConfig | None:
        """Config record that rebuilds this target, when one exists."""
        return None

    # ------------------------------------------------------------------
    # Evaluation
    # ------------------------------------------------------------------
    def check_vector(self, x: FloatArray, operation: str) -> FloatArray:
        """Coerce x to a float vector of the target dimension."""
        arr = np.asarray(x, dtype=float)
        if arr.shape != (self.dimension,):
            raise DimensionMismatchError(operation, self.dimension, int(arr.size))
        return arr

    def potential(self, x: FloatArray) -> float:
        """Return U(x) >= 0."""
        return self._potential(self.check_vector(x, "potential"))

    def grad(self, x: FloatArray) -> FloatArray:
        """Return the gradient of U at x (zero at declared singular points)."""
        return self.grad_with_flag(x).value

    def grad_with_flag(self, x: FloatArray) -> GradientEvaluation:
        """Return the gradient together with the singular-point flag."""
        return self._grad(self.check_vector(x, "grad"))

    def hessian(self, x: FloatArray) -> FloatArray:
        """Return the analytic Hessian of U at x.

        Raises:
            UnsupportedCapabilityError: If the target has no analytic Hessian
        """
        if not self.has_hessian:
            raise UnsupportedCapabilityError(
                ERROR_NO_HESSIAN.format(family=self.family), "hessian", family=self.family
            )
        return self._hessian(self.check_vector(x, "hessian"))

    def hessian_or_finite_difference(
        self,
        x: FloatArray,
        *,
        allow_finite_difference: bool = True,
    ) -> FloatArray:
        """Analytic Hessian when available, central differences of grad otherwise."""
        if self.has_hessian:
            return self.hessian(x)
        if not allow_finite_difference:
            raise UnsupportedCapabilityError(
                ERROR_NO_HESSIAN.format(family=self.family),
                "hessian_or_finite_difference",
                family=self.family,
            )
        return finite_difference_hessian(self.grad, self.check_vector(x, "hessian"))

    def directional_rate(self, x: FloatArray, v: FloatArray, t: float) -> float:
        """Return <grad U(x + t v), v>."""
        x = self.check_vector(x, "directional_rate")
        v = self.check_vector(v, "directional_rate")
        return float(self._grad(x + t * v).value @ v)

    def affine_coefficients(self, x: FloatArray, v: FloatArray) -> tuple[float, float]:
        """Return (a, b) with directional_rate(x, v, t) = a + b t.

        Raises:
            UnsupportedCapabilityError: If the directional rate is not affine
        """
        raise UnsupportedCapabilityError(
            ERROR_NOT_AFFINE.format(family=self.family), "affine_coefficients"
        )

    # ------------------------------------------------------------------
    # Radial profile, isotropic targets only
    # ------------------------------------------------------------------
    def radial_potential_from_log(self, log_radius: float) -> float:
        """Return u(rho) where U(x) = u(|x|) and log_radius = log rho."""
        raise UnsupportedCapabilityError(
            ERROR_NOT_ISOTROPIC.format(family=self.family), "radial_potential_from_log"
        )

    def radial_elasticity_from_log(self, log_radius: float) -> float:
        """Return rho u'(rho) for log_radius = log rho."""
        raise UnsupportedCapabilityError(
            ERROR_NOT_ISOTROPIC.format(family=self.family), "radial_elasticity_from_log"
        )

    @abstractmethod
    def _potential(self, x: FloatArray) -> float: ...

    @abstractmethod
    def _grad(self, x: FloatArray) -> GradientEvaluation: ...

    def _hessian(self, x: FloatArray) -> FloatArray:
        raise NotImplementedError


class GaussianTarget(Target):
    """Zero-mean Gaussian with diagonal covariance, U = sum x_i^2 / (2 s_i)."""

    family: ClassVar[str] = "gaussian"
    affine_directional_rate: ClassVar[bool] = True

    def __init__(self, dimension: int, covariance_diagonal: list[float] | None = None) -> None:
        """Initialize the Gaussian.

        Args:
            dimension: State-space dimension
            covariance_diagonal: Per-coordinate variances, identity when omitted
        """
        super().__init__(dimension)
        variances = np.ones(dimension) if covariance_diagonal is None else covariance_diagonal
        self.variances = np.asarray(variances, dtype=float)
        self.precision = 1.0 / self.variances

    @property
    def convex(self) -> bool:
        return True

    @property
    def is_isotropic(self) -> bool:
        return bool(np.all(self.precision == self.precision[0]))

    @property
    def config(self) -> TargetConfig:
        diagonal = None if np.all(self.variances == 1.0) else self.variances.tolist()
        return TargetConfig(
            family="gaussian",
            dimension=self.dimension,
            parameters=TargetParameters(covariance_diagonal=diagonal),
        )

    def _potential(self, x: FloatArray) -> float:
        return 0.5 * float(np.sum(self.precision * x * x))

    def _grad(self, x: FloatArray) -> GradientEvaluation:
        return GradientEvaluation(self.precision * x, degenerate=False)

    def _hessian(self, x: FloatArray) -> FloatArray:
        return np.diag(self.precision)

    def affine_coefficients(self, x: FloatArray, v: FloatArray) -> tuple[float, float]:
        x = self.check_vector(x, "affine_coefficients")
        v = self.check_vector(v, "affine_coefficients")
        return float(np.sum(self.precision * x * v)), float(np.sum(self.precision * v * v))

    def radial_potential_from_log(self, log_radius: float) -> float:
        if not self.is_isotropic:
            super().radial_potential_from_log(log_radius)
        return 0.5 * float(self.precision[0] * np.exp(2.0 * log_radius))

    def radial_elasticity_from_log(self, log_radius: float) -> float:
        if not self.is_isotropic:
            super().radial_elasticity_from_log(log_radius)
        return float(self.precision[0] * np.exp(2.0 * log_radius))


class GeneralizedGaussianTarget(Target):
    """Potential U = |x|^beta.

    For beta < 2 the gradient is singular at the origin; it is reported as zero
    with the degenerate flag set, which leaves the sampler's law unchanged since
    the path meets the origin with probability zero.
    """

    family: ClassVar[str] = "gen_gaussian"

    def __init__(self, dimension: int, beta: float) -> None:
        """Initialize the target.

        Args:
            dimension: State-space dimension
            beta: Positive exponent
        """
        super().__init__(dimension)
        self.beta = float(beta)

    @property
    def convex(self) -> bool:
        return self.beta >= 1.0

    @property
    def is_isotropic(self) -> bool:
        return True

    @property
    def config(self) -> TargetConfig:
        return TargetConfig(
            family="gen_gaussian",
            dimension=self.dimension,
            parameters=TargetParameters(beta=self.beta),
        )

    def _potential(self, x: FloatArray) -> float:
        return float(np.linalg.norm(x)) ** self.beta

    def _grad(self, x: FloatArray) -> GradientEvaluation:
        r = float(np.linalg.norm(x))
        if r == 0.0:
            return GradientEvaluation(np.zeros_like(x), degenerate=self.beta < 2.0)  # noqa: PLR2004
        return GradientEvaluation(self.beta * r ** (self.beta - 2.0) * x, degenerate=False)

    def _hessian(self, x: FloatArray) -> FloatArray:
        beta = self.beta
        r = float(np.linalg.norm(x))
        identity = np.eye(self.dimension)
        if r == 0.0:
            if beta > 2.0:  # noqa: PLR2004
                return np.zeros((self.dimension, self.dimension))
            if beta == 2.0:  # noqa: PLR2004
                return 2.0 * identity
            raise UnsupportedCapabilityError(ERROR_HESSIAN_AT_ORIGIN, "hessian", beta=beta)
        return beta * r ** (beta - 2.0) * identity + beta * (beta - 2.0) * r ** (
            beta - 4.0
        ) * np.outer(x, x)

    def radial_potential_from_log(self, log_radius: float) -> float:
        return float(np.exp(self.beta * log_radius))

    def radial_elasticity_from_log(self, log_radius: float) -> float:
        return self.beta * float(np.exp(self.beta * log_radius))


class StudentTTarget(Target):
    """Multivariate t with k degrees of freedom, U = ((k + d)/2) log(1 + |x|^2/k)."""

    family: ClassVar[str] = "student_t"

    def __init__(self, dimension: int, k: float) -> None:
        """Initialize the target.

        Args:
            dimension: State-space dimension
            k: Degrees of freedom
        """
        super().__init__(dimension)
        self.k = float(k)
        self.scale = self.k + dimension

    @property
    def is_isotropic(self) -> bool:
        return True

    @property
    def config(self) -> TargetConfig:
        return TargetConfig(
            family="student_t",
            dimension=self.dimension,
            parameters=TargetParameters(k=self.k),
        )

    def _potential(self, x: FloatArray) -> float:
        return 0.5 * self.scale * float(np.log1p(float(x @ x) / self.k))

    def _grad(self, x: FloatArray) -> GradientEvaluation:
        return GradientEvaluation(self.scale / (self.k + float(x @ x)) * x, degenerate=False)

    def _hessian(self, x: FloatArray) -> FloatArray:
        denom = self.k + float(x @ x)
        return (self.scale / denom) * np.eye(self.dimension) - (
            2.0 * self.scale / denom**2
        ) * np.outer(x, x)

    def radial_potential_from_log(self, log_radius: float) -> float:
        return 0.5 * self.scale * float(np.logaddexp(0.0, 2.0 * log_radius - np.log(self.k)))

    def radial_elasticity_from_log(self, log_radius: float) -> float:
        return self.scale * float(expit(2.0 * log_radius - np.log(self.k)))


def build_target(config: TargetConfig) -> Target:
    """Construct a target from its config record."""
    params = config.parameters
    if config.family == "gaussian":
        return GaussianTarget(config.dimension, params.covariance_diagonal)
    if config.family == "gen_gaussian":
        return GeneralizedGaussianTarget(config.dimension, params.beta)  # type: ignore[arg-type]
    return StudentTTarget(config.dimension, params.k)  # type: ignore[arg-type]
