"""Angular integrals over the uniform velocity sphere.

For a uniform unit vector w in d dimensions, the angle to a fixed axis has
density kappa_d sin^(d-2)(theta) on [0, pi]; all sphere averages used by the
drift diagnostics reduce to one-dimensional integrals in that angle.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from scipy.special import gammaln

from bpskit.exceptions import NumericalError

from .quadrature import adaptive_gauss_legendre, singular_cosine_integral

C_D_BRACKET = (0.0, 1e6)
C_D_TOLERANCE = 1e-10
QUARTER = 0.25

# Error messages
ERROR_BRACKET = "F(u, d) does not fall below 1/4 on the bisection bracket"


def angle_norm(d: int) -> float:
    """kappa_d = Gamma(d/2) / (sqrt(pi) Gamma((d-1)/2))."""
    return math.exp(gammaln(d / 2.0) - gammaln((d - 1) / 2.0)) / math.sqrt(math.pi)


def angle_norm_by_quadrature(d: int) -> float:
    """kappa_d from 1 / int_0^pi sin^(d-2)."""
    return 1.0 / adaptive_gauss_legendre(lambda t: np.sin(t) ** (d - 2), 0.0, math.pi)


@lru_cache(maxsize=4096)
def F(u: float, d: int) -> float:
    """kappa_d int_0^(pi/2) sin^(d-2)(theta) / sqrt(1 + u cos theta) dtheta.

    Decreases from F(0, d) = 1/2 to 0 as u grows.
    """
    kappa = angle_norm(d)
    return kappa * adaptive_gauss_legendre(
        lambda t: np.sin(t) ** (d - 2) / np.sqrt(1.0 + u * np.cos(t)), 0.0, 0.5 * math.pi
    )


@lru_cache(maxsize=64)
def c_d(d: int) -> float:
    """Smallest grid-resolved u with F(u, d) <= 1/4, by bisection."""
    lo, hi = C_D_BRACKET
    if F(hi, d) > QUARTER:
        raise NumericalError(ERROR_BRACKET, "c_d", d=d, upper=hi)
    while hi - lo > C_D_TOLERANCE * max(1.0, lo):
        mid = 0.5 * (lo + hi)
        if F(mid, d) > QUARTER:
            lo = mid
        else:
            hi = mid
    return hi


def gamma_d(d: int) -> float:
    """3 |Gamma(-3/4)| Gamma(d/2) / (8 sqrt(pi) Gamma(d/2 - 1/4))."""
    log_value = gammaln(-0.75) + gammaln(d / 2.0) - gammaln(d / 2.0 - 0.25)
    return 3.0 * math.exp(log_value) / (8.0 * math.sqrt(math.pi))


def gamma_d_by_quadrature(d: int) -> float:
    """kappa_d int_0^(pi/2) sin^(d-2)(theta) cos^(-1/2)(theta) dtheta."""
    return angle_norm(d) * singular_cosine_integral(lambda t: np.sin(t) ** (d - 2))
