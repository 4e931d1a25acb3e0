"""Integrals of test functions along linear path segments."""

from __future__ import annotations

from functools import lru_cache

import numpy as np
from scipy.special import roots_legendre

from bpskit.exceptions import EstimationError
from bpskit.numerics import FloatArray
from bpskit.sampler import Trajectory

from .test_functions import EXACT_DEGREE, Monomial, TestFunction

DEFAULT_QUADRATURE_ORDER = 16
QUADRATURE_CHUNK = 4096

# Error messages
ERROR_UNSUPPORTED_DEGREE = "Closed-form segment integrals support degree <= 2, got {degree}"


def segment_integral(x: FloatArray, v: FloatArray, tau: float, monomial: Monomial) -> float:
    """Closed-form integral of a monomial of degree <= 2 along x + s v, s in [0, tau].

    Raises:
        EstimationError: If the monomial degree exceeds 2
    """
    values = segment_integrals(
        np.atleast_2d(x), np.atleast_2d(v), np.array([float(tau)]), monomial
    )
    return float(values[0])


def segment_integrals(
    xs: FloatArray, vs: FloatArray, taus: FloatArray, monomial: Monomial
) -> FloatArray:
    """Vectorized closed-form segment integrals for rows of (xs, vs, taus)."""
    if monomial.degree > EXACT_DEGREE:
        raise EstimationError(
            ERROR_UNSUPPORTED_DEGREE.format(degree=monomial.degree),
            "segment_integral",
            degree=monomial.degree,
        )
    if monomial.degree == 0:
        return np.array(taus, dtype=float)
    if monomial.degree == 1:
        (i,) = monomial.indices
        return xs[:, i] * taus + vs[:, i] * taus**2 / 2.0
    i, j = monomial.indices
    return (
        xs[:, i] * xs[:, j] * taus
        + (xs[:, i] * vs[:, j] + xs[:, j] * vs[:, i]) * taus**2 / 2.0
        + vs[:, i] * vs[:, j] * taus**3 / 3.0
    )


@lru_cache(maxsize=8)
def _legendre_rule(order: int) -> tuple[FloatArray, FloatArray]:
    nodes, weights = roots_legendre(order)
    return (nodes + 1.0) / 2.0, weights / 2.0


def quadrature_segment_integrals(
    xs: FloatArray,
    vs: FloatArray,
    taus: FloatArray,
    g: TestFunction,
    order: int = DEFAULT_QUADRATURE_ORDER,
) -> FloatArray:
    """Gauss-Legendre segment integrals of any test function."""
    unit_nodes, unit_weights = _legendre_rule(order)
    out = np.empty(taus.shape[0])
    d = xs.shape[1]
    for start in range(0, taus.shape[0], QUADRATURE_CHUNK):
        stop = min(start + QUADRATURE_CHUNK, taus.shape[0])
        x, v, tau = xs[start:stop], vs[start:stop], taus[start:stop]
        offsets = tau[:, None] * unit_nodes[None, :]
        points = (x[:, None, :] + offsets[:, :, None] * v[:, None, :]).reshape(-1, d)
        velocities = np.repeat(v, order, axis=0)
        values = g.evaluate(points, velocities).reshape(-1, order)
        out[start:stop] = tau * (values @ unit_weights)
    return out


def piece_integrals(
    xs: FloatArray,
    vs: FloatArray,
    taus: FloatArray,
    g: TestFunction,
    *,
    order: int = DEFAULT_QUADRATURE_ORDER,
    force_quadrature: bool = False,
) -> FloatArray:
    """Exact integrals for low-degree monomials, quadrature otherwise."""
    if isinstance(g, Monomial) and g.degree <= EXACT_DEGREE and not force_quadrature:
        return segment_integrals(xs, vs, taus, g)
    return quadrature_segment_integrals(xs, vs, taus, g, order)


def batched_pieces(
    trajectory: Trajectory, batches: int
) -> tuple[FloatArray, FloatArray, FloatArray, np.ndarray]:
    """Split the path at event times and at `batches` equal-duration boundaries.

    Returns:
        Start positions, velocities, lengths and batch index of every piece
    """
    t0, t1 = trajectory.start_time, trajectory.end_time
    edges = np.linspace(t0, t1, batches + 1)
    cuts = np.union1d(trajectory.times, edges)
    starts, ends = cuts[:-1], cuts[1:]
    keep = ends > starts
    starts, ends = starts[keep], ends[keep]
    segment = np.clip(np.searchsorted(trajectory.times, starts, side="right") - 1, 0, None)
    velocities = trajectory.velocities[segment]
    positions = (
        trajectory.positions[segment]
        + (starts - trajectory.times[segment])[:, None] * velocities
    )
    batch = np.clip(np.searchsorted(edges, starts, side="right") - 1, 0, batches - 1)
    return positions, velocities, ends - starts, batch


def batch_integrals(
    trajectory: Trajectory,
    g: TestFunction,
    batches: int,
    *,
    order: int = DEFAULT_QUADRATURE_ORDER,
    force_quadrature: bool = False,
) -> FloatArray:
    """Integral of g over each of `batches` equal-duration stretches of the path."""
    xs, vs, taus, batch = batched_pieces(trajectory, batches)
    values = piece_integrals(xs, vs, taus, g, order=order, force_quadrature=force_quadrature)
    return np.bincount(batch, weights=values, minlength=batches)
