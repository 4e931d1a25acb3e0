"""Central finite differences shared by targets, transforms and diagnostics."""

from __future__ import annotations

from collections.abc import Callable

import numpy as np
from numpy.typing import NDArray

FloatArray = NDArray[np.float64]

HESSIAN_STEP_SCALE = 1e-4


def default_step(x: FloatArray, scale: float = HESSIAN_STEP_SCALE) -> float:
    """Step size proportional to 1 + |x|."""
    return scale * (1.0 + float(np.linalg.norm(x)))


def central_gradient(
    func: Callable[[FloatArray], float],
    x: FloatArray,
    step: float | None = None,
) -> FloatArray:
    """Gradient of a scalar function by central differences."""
    x = np.asarray(x, dtype=float)
    h = default_step(x, 1e-5) if step is None else step
    grad = np.empty_like(x)
    for i in range(x.size):
        e = np.zeros_like(x)
        e[i] = h
        grad[i] = (func(x + e) - func(x - e)) / (2.0 * h)
    return grad


def central_jacobian(
    func: Callable[[FloatArray], FloatArray],
    x: FloatArray,
    step: float | None = None,
) -> FloatArray:
    """Jacobian J[i, j] = d func_i / d x_j of a vector function by central differences."""
    x = np.asarray(x, dtype=float)
    h = default_step(x, 1e-5) if step is None else step
    columns = []
    for j in range(x.size):
        e = np.zeros_like(x)
        e[j] = h
        columns.append((np.asarray(func(x + e)) - np.asarray(func(x - e))) / (2.0 * h))
    return np.column_stack(columns)


def finite_difference_hessian(
    grad: Callable[[FloatArray], FloatArray],
    x: FloatArray,
    step: float | None = None,
) -> FloatArray:
    """Symmetrized Hessian from central differences of the gradient."""
    x = np.asarray(x, dtype=float)
    h = default_step(x) if step is None else step
    jac = central_jacobian(grad, x, h)
    return 0.5 * (jac + jac.T)


def relative_error(actual: FloatArray | float, expected: FloatArray | float) -> float:
    """Max-norm error relative to max(1, |expected|)."""
    actual = np.asarray(actual, dtype=float)
    expected = np.asarray(expected, dtype=float)
    scale = max(1.0, float(np.max(np.abs(expected))) if expected.size else 1.0)
    return float(np.max(np.abs(actual - expected))) / scale
