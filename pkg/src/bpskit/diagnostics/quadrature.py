"""Adaptive Gauss-Legendre quadrature for smooth bounded integrands."""

from __future__ import annotations

import math
from collections.abc import Callable
from functools import lru_cache

import numpy as np
from scipy.special import roots_legendre

from bpskit.numerics import FloatArray

DEFAULT_TOLERANCE = 1e-12
DEFAULT_ORDER = 20
MAX_DEPTH = 40


@lru_cache(maxsize=4)
def _rule(order: int) -> tuple[FloatArray, FloatArray]:
    return roots_legendre(order)


def adaptive_gauss_legendre(
    fn: Callable[[FloatArray], FloatArray],
    a: float,
    b: float,
    *,
    tol: float = DEFAULT_TOLERANCE,
    order: int = DEFAULT_ORDER,
) -> float:
    """Integrate a vectorized fn over [a, b] by recursive interval halving.

    An interval is accepted once its two halves agree with the whole to within
    its share of the tolerance, relative to max(1, |estimate|). Accepted pieces
    are summed in left-to-right order.
    """
    nodes, weights = _rule(order)

    def rule(lo: float, hi: float) -> float:
        half = 0.5 * (hi - lo)
        return half * float(weights @ fn(lo + half + half * nodes))

    whole = rule(a, b)
    scale = max(1.0, abs(whole))
    length = b - a
    accepted: list[tuple[float, float]] = []
    stack = [(a, b, whole, 0)]
    while stack:
        lo, hi, estimate, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        left, right = rule(lo, mid), rule(mid, hi)
        share = tol * scale * (hi - lo) / length
        if abs(left + right - estimate) <= share or depth >= MAX_DEPTH:
            accepted.append((lo, left + right))
            continue
        stack.append((mid, hi, right, depth + 1))
        stack.append((lo, mid, left, depth + 1))
    accepted.sort()
    return math.fsum(value for _, value in accepted)


def singular_cosine_integral(
    fn: Callable[[FloatArray], FloatArray],
    *,
    tol: float = DEFAULT_TOLERANCE,
) -> float:
    """Integrate fn(theta) / sqrt(cos theta) over [0, pi/2].

    Substitutes theta = pi/2 - phi^2, turning the endpoint singularity into the
    bounded integrand 2 phi fn(pi/2 - phi^2) / sqrt(sin phi^2).
    """

    def smooth(phi: FloatArray) -> FloatArray:
        sq = phi * phi
        return 2.0 * phi * fn(0.5 * np.pi - sq) / np.sqrt(np.sin(sq))

    return adaptive_gauss_legendre(smooth, 0.0, math.sqrt(0.5 * math.pi), tol=tol)
