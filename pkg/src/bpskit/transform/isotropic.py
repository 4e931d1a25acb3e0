"""Isotropic transforms h(y) = f(|y|) y / |y| and their derivatives.

Radial quantities are evaluated through ratio and log forms (f/r, f'/f - 1/r,
log f) so that the exponential family stays finite at radii where f itself
overflows.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from typing import NamedTuple

import numpy as np

from bpskit.numerics import FloatArray

from .transform_models import (
    ExponentialTransformConfig,
    PolynomialTransformConfig,
    default_polynomial_degree,
)

BISECTION_STEPS = 60
NEWTON_STEPS = 3
E = math.e


class RadialValues(NamedTuple):
    """f(r) and its first two derivatives."""

    f: float
    df: float
    d2f: float


class IsotropicTransform(ABC):
    """Radial bijection of R^d with f strictly increasing and f(0) = 0."""

    kind: str = "abstract"

    # ------------------------------------------------------------------
    # Radial profile
    # ------------------------------------------------------------------
    @abstractmethod
    def radial(self, r: float) -> RadialValues:
        """Return (f, f', f'') at radius r >= 0."""

    @abstractmethod
    def log_f(self, r: float) -> float:
        """Return log f(r) for r > 0."""

    @abstractmethod
    def log_df(self, r: float) -> float:
        """Return log f'(r)."""

    @abstractmethod
    def f_over_r(self, r: float) -> float:
        """Return f(r)/r, equal to f'(0) at the origin."""

    @abstractmethod
    def log_f_over_r(self, r: float) -> float:
        """Return log(f(r)/r)."""

    @abstractmethod
    def f_over_r_array(self, radii: FloatArray) -> FloatArray:
        """Vectorized f(r)/r."""

    @abstractmethod
    def df_over_f_gap(self, r: float) -> float:
        """Return f'(r)/f(r) - 1/r, zero at the origin."""

    @abstractmethod
    def d2f_over_df(self, r: float) -> float:
        """Return f''(r)/f'(r)."""

    @abstractmethod
    def inverse_radius(self, rho: float) -> float:
        """Return r with f(r) = rho."""

    @property
    def branch_points(self) -> tuple[float, ...]:
        """Radii where the piecewise definition of f switches branch."""
        return ()

    @property
    def nonsmooth_radii(self) -> tuple[float, ...]:
        """Radii where second derivatives of the transformed potential may jump."""
        return ()

    @property
    @abstractmethod
    def config(self) -> ExponentialTransformConfig | PolynomialTransformConfig:
        """Config record that rebuilds this transform."""

    def _bisect_newton(self, rho: float, lo: float, hi: float) -> float:
        for _ in range(BISECTION_STEPS):
            mid = 0.5 * (lo + hi)
            if self.radial(mid).f < rho:
                lo = mid
            else:
                hi = mid
        r = 0.5 * (lo + hi)
        for _ in range(NEWTON_STEPS):
            values = self.radial(r)
            r = min(max(r - (values.f - rho) / values.df, lo), hi)
        return r

    # ------------------------------------------------------------------
    # Map on R^d
    # ------------------------------------------------------------------
    def apply(self, y: FloatArray) -> FloatArray:
        """Map y to x = f(|y|) y / |y|, with h(0) = 0."""
        y = np.asarray(y, dtype=float)
        r = float(np.linalg.norm(y))
        if r == 0.0:
            return np.zeros_like(y)
        return self.f_over_r(r) * y

    def apply_many(self, ys: FloatArray) -> FloatArray:
        """Row-wise apply for an (n, d) array."""
        ys = np.atleast_2d(np.asarray(ys, dtype=float))
        scale = self.f_over_r_array(np.linalg.norm(ys, axis=1))
        return scale[:, None] * ys

    def invert(self, x: FloatArray) -> FloatArray:
        """Map x back to y with apply(y) = x."""
        x = np.asarray(x, dtype=float)
        rho = float(np.linalg.norm(x))
        if rho == 0.0:
            return np.zeros_like(x)
        return (self.inverse_radius(rho) / rho) * x

    def jacobian(self, y: FloatArray) -> FloatArray:
        """Return the Jacobian (f/r) I + (f' - f/r) y y^T / r^2."""
        y = np.asarray(y, dtype=float)
        d = y.size
        r = float(np.linalg.norm(y))
        if r == 0.0:
            return self.radial(0.0).df * np.eye(d)
        ratio = self.f_over_r(r)
        unit = y / r
        return ratio * np.eye(d) + (self.radial(r).df - ratio) * np.outer(unit, unit)

    def log_det_jacobian(self, y: FloatArray) -> tuple[float, FloatArray]:
        """Return log det of the Jacobian and its gradient in y."""
        y = np.asarray(y, dtype=float)
        d = y.size
        r = float(np.linalg.norm(y))
        if r == 0.0:
            return d * self.log_df(0.0), np.zeros_like(y)
        value = self.log_df(r) + (d - 1) * self.log_f_over_r(r)
        slope = self.d2f_over_df(r) + (d - 1) * self.df_over_f_gap(r)
        return value, (slope / r) * y

    def log_det_slope(self, r: float, dimension: int) -> float:
        """Radial derivative of the log-determinant."""
        if r == 0.0:
            return 0.0
        return self.d2f_over_df(r) + (dimension - 1) * self.df_over_f_gap(r)


class ExponentialTransform(IsotropicTransform):
    """f(r) = e (b^3 r^3 / 6 + b r / 2) for r <= 1/b and exp(b r) - e/3 beyond.

    Both branches agree with their first three derivatives at r = 1/b.
    """

    kind = "exp"

    def __init__(self, b: float = 1.0) -> None:
        """Create the transform with growth rate b > 0."""
        self.b = float(b)
        self.join = 1.0 / self.b

    @property
    def branch_points(self) -> tuple[float, ...]:
        return (self.join,)

    @property
    def config(self) -> ExponentialTransformConfig:
        return ExponentialTransformConfig(b=self.b)

    def radial(self, r: float) -> RadialValues:
        b = self.b
        if r <= self.join:
            return RadialValues(
                E * (b**3 * r**3 / 6.0 + b * r / 2.0),
                E * (b**3 * r**2 / 2.0 + b / 2.0),
                E * b**3 * r,
            )
        growth = math.exp(b * r)
        return RadialValues(growth - E / 3.0, b * growth, b * b * growth)

    def log_f(self, r: float) -> float:
        if r <= self.join:
            return math.log(self.radial(r).f)
        return self.b * r + math.log1p(-(E / 3.0) * math.exp(-self.b * r))

    def log_df(self, r: float) -> float:
        if r <= self.join:
            return math.log(self.radial(r).df)
        return math.log(self.b) + self.b * r

    def f_over_r(self, r: float) -> float:
        b = self.b
        if r <= self.join:
            return E * (b**3 * r**2 / 6.0 + b / 2.0)
        return math.exp(self.log_f_over_r(r))

    def log_f_over_r(self, r: float) -> float:
        if r <= self.join:
            return math.log(self.f_over_r(r))
        return self.log_f(r) - math.log(r)

    def f_over_r_array(self, radii: FloatArray) -> FloatArray:
        b = self.b
        r = np.asarray(radii, dtype=float)
        inner = E * (b**3 * r**2 / 6.0 + b / 2.0)
        safe = np.where(r > self.join, r, 1.0)
        with np.errstate(over="ignore"):
            outer = np.exp(b * safe - np.log(safe) + np.log1p(-(E / 3.0) * np.exp(-b * safe)))
        return np.where(r > self.join, outer, inner)

    def df_over_f_gap(self, r: float) -> float:
        b = self.b
        if r == 0.0:
            return 0.0
        if r <= self.join:
            return E * b**3 * r**2 / (3.0 * self.radial(r).f)
        return b / (1.0 - (E / 3.0) * math.exp(-b * r)) - 1.0 / r

    def d2f_over_df(self, r: float) -> float:
        b = self.b
        if r <= self.join:
            return 2.0 * b * b * r / (b * b * r * r + 1.0)
        return b

    def inverse_radius(self, rho: float) -> float:
        if rho > self.radial(self.join).f:
            return math.log(rho + E / 3.0) / self.b
        return self._bisect_newton(rho, 0.0, self.join)


class PolynomialTransform(IsotropicTransform):
    """f(r) = r for r <= R and r + (r - R)^p beyond; C^2 at R for p >= 3."""

    kind = "poly"

    def __init__(self, R: float = 1.0, p: int = 3) -> None:
        """Create the transform with identity radius R and integer degree p >= 3."""
        self.R = float(R)
        self.p = int(p)

    @property
    def branch_points(self) -> tuple[float, ...]:
        return (self.R,)

    @property
    def nonsmooth_radii(self) -> tuple[float, ...]:
        return (self.R,)

    @property
    def config(self) -> PolynomialTransformConfig:
        return PolynomialTransformConfig(R=self.R, p=self.p)

    def radial(self, r: float) -> RadialValues:
        if r <= self.R:
            return RadialValues(r, 1.0, 0.0)
        s, p = r - self.R, self.p
        return RadialValues(r + s**p, 1.0 + p * s ** (p - 1), p * (p - 1) * s ** (p - 2))

    def log_f(self, r: float) -> float:
        return math.log(self.radial(r).f)

    def log_df(self, r: float) -> float:
        return math.log(self.radial(r).df)

    def f_over_r(self, r: float) -> float:
        if r <= self.R:
            return 1.0
        return 1.0 + (r - self.R) ** self.p / r

    def log_f_over_r(self, r: float) -> float:
        return math.log(self.f_over_r(r))

    def f_over_r_array(self, radii: FloatArray) -> FloatArray:
        r = np.asarray(radii, dtype=float)
        excess = np.maximum(r - self.R, 0.0)
        return 1.0 + excess**self.p / np.where(r > 0.0, r, 1.0)

    def df_over_f_gap(self, r: float) -> float:
        if r <= self.R:
            return 0.0
        s, p = r - self.R, self.p
        return s ** (p - 1) * (p * r - s) / (r * self.radial(r).f)

    def d2f_over_df(self, r: float) -> float:
        values = self.radial(r)
        return values.d2f / values.df

    def inverse_radius(self, rho: float) -> float:
        if rho <= self.R:
            return rho
        return self._bisect_newton(rho, self.R, rho)


def build_transform(
    config: ExponentialTransformConfig | PolynomialTransformConfig,
    beta: float | None = None,
) -> IsotropicTransform:
    """Construct a transform, deriving the polynomial degree from beta when unset."""
    if isinstance(config, ExponentialTransformConfig):
        return ExponentialTransform(config.b)
    degree = config.p if config.p is not None else default_polynomial_degree(beta)
    return PolynomialTransform(config.R, degree)
