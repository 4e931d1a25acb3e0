"""Tests for segment integrals, test functions and trajectory estimators."""

import numpy as np
import pytest

from bpskit.estimators import (
    GenericFunction,
    Monomial,
    batch_integrals,
    batch_means_variance,
    default_batch_count,
    jump_chain_estimate,
    jump_chain_weights,
    mapped_estimate,
    parse_test_function,
    path_average,
    pooled_path_average,
    quadrature_segment_integrals,
    segment_integral,
    segment_integrals,
    squared_radius,
)
from bpskit.exceptions import ConfigurationError, EstimationError
from bpskit.sampler import ConstantRefresh, EventKind, Trajectory
from bpskit.targets import GaussianTarget
from bpskit.transform import PolynomialTransform

POLICY = ConstantRefresh(lambda_ref=1.0)


def l_path(scale: float = 1.0) -> Trajectory:
    """Right along x1 for `scale`, then up along x2 for 2 * `scale`."""
    return Trajectory(
        times=np.array([0.0, 1.0, 3.0]) * scale,
        kinds=(EventKind.INIT, EventKind.REFRESH, EventKind.FINAL),
        positions=np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 2.0]]) * scale,
        velocities=np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 1.0]]),
        policy=POLICY,
    )


class TestTestFunctions:
    """Tests for monomials and the expression parser."""

    @pytest.mark.parametrize(
        ("expr", "indices"),
        [("1", ()), ("x1", (0,)), ("x2^2", (1, 1)), ("x1*x3", (0, 2)), ("x3 * x1", (0, 2))],
    )
    def test_parse_monomials(self, expr: str, indices: tuple[int, ...]) -> None:
        """Test parsing with 1-based coordinates."""
        assert parse_test_function(expr, 3) == Monomial(indices)

    def test_parse_squared_radius(self) -> None:
        """Test that r2 evaluates |x|^2."""
        g = parse_test_function("r2", 2)
        np.testing.assert_allclose(g.evaluate(np.array([[3.0, 4.0]]), np.zeros((1, 2))), [25.0])

    @pytest.mark.parametrize("expr", ["y1", "x1+x2", "sin(x1)", ""])
    def test_parse_rejects_unknown(self, expr: str) -> None:
        """Test that unsupported expressions raise ConfigurationError."""
        with pytest.raises(ConfigurationError):
            parse_test_function(expr, 2)

    def test_parse_rejects_out_of_range_coordinate(self) -> None:
        """Test that coordinates beyond the dimension are rejected."""
        with pytest.raises(ConfigurationError, match="outside"):
            parse_test_function("x3", 2)

    def test_labels(self) -> None:
        """Test human-readable labels."""
        assert Monomial((0, 0)).label == "x1^2"
        assert Monomial((0, 1)).label == "x1*x2"
        assert Monomial().label == "1"

    def test_squared(self) -> None:
        """Test that squaring doubles the indices."""
        assert Monomial((0, 1)).squared() == Monomial((0, 0, 1, 1))
        g = squared_radius().squared()
        np.testing.assert_allclose(g.evaluate(np.array([[1.0, 1.0]]), np.zeros((1, 2))), [4.0])


class TestSegmentIntegrals:
    """Tests for closed-form and quadrature segment integrals."""

    def test_constant(self) -> None:
        """Test that the integral of 1 is the segment length."""
        assert segment_integral(np.zeros(2), np.array([1.0, 0.0]), 2.5, Monomial()) == 2.5

    def test_linear(self) -> None:
        """Test int_0^tau (x + s v) ds."""
        value = segment_integral(np.array([1.0, 0.0]), np.array([0.6, 0.8]), 2.0, Monomial((0,)))
        assert value == pytest.approx(2.0 + 0.6 * 2.0)

    def test_quadratic_matches_quadrature(self, rng: np.random.Generator) -> None:
        """Test closed forms against Gauss-Legendre, which is exact for these degrees."""
        xs = rng.standard_normal((50, 3))
        vs = rng.standard_normal((50, 3))
        vs /= np.linalg.norm(vs, axis=1)[:, None]
        taus = rng.exponential(size=50)
        for monomial in (Monomial((0, 2)), Monomial((1, 1))):
            np.testing.assert_allclose(
                segment_integrals(xs, vs, taus, monomial),
                quadrature_segment_integrals(xs, vs, taus, monomial),
                rtol=1e-12,
                atol=1e-12,
            )

    def test_degree_above_two_rejected(self) -> None:
        """Test that closed forms are limited to degree 2."""
        with pytest.raises(EstimationError):
            segment_integral(np.zeros(2), np.array([1.0, 0.0]), 1.0, Monomial((0, 0, 0)))

    def test_generic_function_by_quadrature(self) -> None:
        """Test quadrature of a non-polynomial integrand."""
        g = GenericFunction(lambda xs, _vs: np.exp(xs[:, 0]), "exp(x1)")
        value = quadrature_segment_integrals(
            np.zeros((1, 2)), np.array([[1.0, 0.0]]), np.array([1.0]), g
        )
        assert value[0] == pytest.approx(np.e - 1.0, rel=1e-12)

    def test_batch_integrals_split_at_edges(self) -> None:
        """Test that batch boundaries cut segments at the right place."""
        np.testing.assert_allclose(batch_integrals(l_path(), Monomial((0,)), 3), [0.5, 1.0, 1.0])


class TestPathAverage:
    """Tests for path_average and pooled_path_average."""

    def test_default_batch_count(self) -> None:
        """Test square-root batching with a floor of two."""
        assert default_batch_count(100.0) == 10
        assert default_batch_count(3.9) == 2
        assert default_batch_count(1e6) == 1000

    def test_batch_means_variance(self) -> None:
        """Test batch_length times the n - 1 sample variance."""
        assert batch_means_variance([1.0, 2.0, 3.0], 2.0) == pytest.approx(2.0)

    def test_batch_means_variance_needs_two(self) -> None:
        """Test that one batch is not enough."""
        with pytest.raises(EstimationError):
            batch_means_variance([1.0], 1.0)

    @pytest.mark.parametrize(
        ("expr", "expected"),
        [("1", 1.0), ("x1", 2.5 / 3.0), ("x2", 2.0 / 3.0), ("x1^2", 7.0 / 9.0), ("x1*x2", 2.0 / 3.0)],
    )
    def test_known_path(self, expr: str, expected: float) -> None:
        """Test time averages along a hand-built path."""
        report = path_average(l_path(), parse_test_function(expr, 2), batches=3)
        assert report.estimate == pytest.approx(expected)
        assert report.batches == 3
        assert report.batch_len == pytest.approx(1.0)

    def test_force_quadrature_agrees(self) -> None:
        """Test that forcing quadrature does not change polynomial estimates."""
        g = Monomial((0, 1))
        exact = path_average(l_path(), g, batches=3)
        forced = path_average(l_path(), g, batches=3, force_quadrature=True)
        assert forced.estimate == pytest.approx(exact.estimate, rel=1e-12)
        assert forced.sigma2 == pytest.approx(exact.sigma2, rel=1e-10)

    def test_constant_function_has_full_ess(self) -> None:
        """Test that a zero variance estimate reports ESS = T."""
        report = path_average(l_path(), Monomial())
        assert report.sigma2 == pytest.approx(0.0, abs=1e-24)
        assert report.ess == pytest.approx(3.0)

    def test_too_few_batches(self) -> None:
        """Test that a single batch is rejected."""
        with pytest.raises(EstimationError):
            path_average(l_path(), Monomial(), batches=1)

    def test_zero_duration(self) -> None:
        """Test that a single-event trajectory cannot be averaged."""
        trajectory = Trajectory(
            times=np.array([0.0]),
            kinds=(EventKind.INIT,),
            positions=np.zeros((1, 2)),
            velocities=np.array([[1.0, 0.0]]),
            policy=POLICY,
        )
        with pytest.raises(EstimationError):
            path_average(trajectory, Monomial())

    def test_pooled_weights_by_duration(self) -> None:
        """Test that pooling divides the total integral by the total duration."""
        g = Monomial((0,))
        short, long = l_path(1.0), l_path(4.0)
        pooled = pooled_path_average([short, long], g)
        # int x1 over the scaled path is 2.5 * scale^2
        assert pooled.estimate == pytest.approx((2.5 + 2.5 * 16.0) / (3.0 + 12.0))
        assert pooled.batches == default_batch_count(3.0) + default_batch_count(12.0)

    def test_pooled_requires_trajectories(self) -> None:
        """Test that pooling nothing raises."""
        with pytest.raises(EstimationError):
            pooled_path_average([], Monomial())

    def test_mapped_estimate_identity_region(self) -> None:
        """Test that a transform acting as the identity leaves estimates unchanged."""
        transform = PolynomialTransform(R=100.0, p=3)
        g = Monomial((0, 0))
        mapped = mapped_estimate(transform, l_path(), g, batches=3)
        assert mapped.estimate == pytest.approx(path_average(l_path(), g, batches=3).estimate)


class TestJumpChain:
    """Tests for the jump-chain estimator."""

    def test_weights_use_reversed_velocity(self) -> None:
        """Test weight 1 / (refresh + <grad U(x), -v>_+) at post-jump states."""
        trajectory = Trajectory(
            times=np.array([0.0, 1.0, 2.0, 3.0]),
            kinds=(EventKind.INIT, EventKind.BOUNCE, EventKind.REFRESH, EventKind.FINAL),
            positions=np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 0.0], [0.0, 1.0]]),
            velocities=np.array([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, 1.0]]),
            policy=POLICY,
        )
        xs, _, weights = jump_chain_weights(trajectory, GaussianTarget(2), POLICY)
        np.testing.assert_allclose(xs, [[1.0, 0.0], [0.0, 0.0]])
        # At (1, 0) moving left, -v points along the gradient: rate 1 + 1.
        np.testing.assert_allclose(weights, [0.5, 1.0])
        estimate = jump_chain_estimate(trajectory, Monomial((0,)), GaussianTarget(2), POLICY)
        assert estimate == pytest.approx(0.5 / 1.5)

    def test_requires_jumps(self) -> None:
        """Test that a path without jumps raises."""
        trajectory = Trajectory(
            times=np.array([0.0, 1.0]),
            kinds=(EventKind.INIT, EventKind.FINAL),
            positions=np.array([[0.0, 0.0], [1.0, 0.0]]),
            velocities=np.array([[1.0, 0.0], [1.0, 0.0]]),
            policy=POLICY,
        )
        with pytest.raises(EstimationError):
            jump_chain_estimate(trajectory, Monomial(), GaussianTarget(2), POLICY)
