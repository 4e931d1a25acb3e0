"""Deterministic direction and velocity grids for drift sweeps."""

from __future__ import annotations

import math

import numpy as np
from scipy.stats import norm, qmc

from bpskit.numerics import FloatArray

GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))


def sphere_directions(d: int, n: int) -> FloatArray:
    """n quasi-uniform unit vectors in R^d.

    Circle points for d = 2, a Fibonacci spiral for d = 3 and Gaussianized
    unscrambled Halton points otherwise.
    """
    if d == 2:  # noqa: PLR2004
        angles = 2.0 * math.pi * np.arange(n) / n
        return np.column_stack([np.cos(angles), np.sin(angles)])
    if d == 3:  # noqa: PLR2004
        k = np.arange(n) + 0.5
        z = 1.0 - 2.0 * k / n
        rho = np.sqrt(1.0 - z * z)
        phi = GOLDEN_ANGLE * k
        return np.column_stack([rho * np.cos(phi), rho * np.sin(phi), z])
    points = qmc.Halton(d=d, scramble=False).random(n + 1)[1:]
    gaussian = norm.ppf(points)
    return gaussian / np.linalg.norm(gaussian, axis=1, keepdims=True)


def velocity_angles(count: int, tangent_digits: int) -> FloatArray:
    """Midpoint angles in [0, pi] plus pi/2 and pi/2 +- 10^-k."""
    mids = (np.arange(count) + 0.5) * math.pi / count
    offsets = 10.0 ** -np.arange(1, tangent_digits + 1)
    extra = np.concatenate([[0.5 * math.pi], 0.5 * math.pi - offsets, 0.5 * math.pi + offsets])
    return np.unique(np.concatenate([mids, extra]))


def orthonormal_tangent(normal: FloatArray) -> FloatArray:
    """A unit vector orthogonal to `normal`."""
    seed = np.zeros_like(normal)
    seed[int(np.argmin(np.abs(normal)))] = 1.0
    tangent = seed - float(seed @ normal) * normal
    return tangent / np.linalg.norm(tangent)
