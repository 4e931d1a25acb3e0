"""Tests for targets pulled back through a transform, and transform self-checks."""

import math
from unittest.mock import Mock

import numpy as np
import pytest
from scipy.integrate import quad

from bpskit.exceptions import UnsupportedCapabilityError
from bpskit.numerics import central_gradient
from bpskit.sampler import BouncyParticleSampler, ConstantRefresh, HorizonConfig
from bpskit.targets import GaussianTarget, GeneralizedGaussianTarget, StudentTTarget
from bpskit.transform import (
    ExponentialTransform,
    PolynomialTransform,
    TransformedTarget,
    join_error,
    map_trajectory,
    run_transform_checks,
    transformed_grad,
    transformed_potential,
)


@pytest.fixture
def t_exp() -> TransformedTarget:
    """Student t (k = 4) under the exponential transform."""
    return TransformedTarget(StudentTTarget(2, 4.0), ExponentialTransform())


@pytest.fixture
def gg_poly() -> TransformedTarget:
    """|x|^0.5 under the degree-5 polynomial transform."""
    return TransformedTarget(GeneralizedGaussianTarget(2, 0.5), PolynomialTransform(1.0, 5))


class TestTransformedTarget:
    """Tests for TransformedTarget."""

    def test_family_and_capabilities(self, t_exp: TransformedTarget) -> None:
        """Test the composite family name and missing analytic Hessian."""
        assert t_exp.family == "student_t+exp"
        assert not t_exp.has_hessian
        with pytest.raises(UnsupportedCapabilityError):
            t_exp.hessian(np.ones(2))
        assert t_exp.hessian_or_finite_difference(np.ones(2)).shape == (2, 2)

    @pytest.mark.parametrize("y", [[0.3, 0.1], [0.8, -0.9], [2.0, 1.5], [-4.0, 0.5]])
    def test_gradient_matches_finite_differences(
        self, t_exp: TransformedTarget, gg_poly: TransformedTarget, y: list[float]
    ) -> None:
        """Test grad U_h against central differences of U_h."""
        point = np.array(y)
        for target in (t_exp, gg_poly):
            expected = central_gradient(target.potential, point)
            np.testing.assert_allclose(target.grad(point), expected, rtol=1e-5, atol=1e-6)

    def test_radial_path_matches_chain_rule(self, t_exp: TransformedTarget) -> None:
        """Test the radial gradient against J^T grad U(h(y)) - grad log det."""
        y = np.array([1.1, -0.6])
        transform = t_exp.transform
        _, log_det_grad = transform.log_det_jacobian(y)
        expected = transform.jacobian(y) @ t_exp.base.grad(transform.apply(y)) - log_det_grad
        np.testing.assert_allclose(t_exp.grad(y), expected, rtol=1e-9)

    def test_anisotropic_base_uses_chain_rule(self) -> None:
        """Test a non-isotropic base against finite differences."""
        target = TransformedTarget(GaussianTarget(2, [1.0, 4.0]), PolynomialTransform(1.0, 3))
        y = np.array([1.4, 0.8])
        np.testing.assert_allclose(
            target.grad(y), central_gradient(target.potential, y), rtol=1e-5, atol=1e-6
        )

    def test_finite_where_transform_overflows(self, t_exp: TransformedTarget) -> None:
        """Test that U_h and its gradient stay finite at radii where f overflows."""
        y = np.array([800.0, 0.0])
        assert math.isfinite(t_exp.potential(y))
        assert np.all(np.isfinite(t_exp.grad(y)))

    @pytest.mark.parametrize("direction", [[1.0, 0.0], [0.6, -0.8], [-0.28, 0.96]])
    def test_exponential_transform_bounds_gradient(
        self, t_exp: TransformedTarget, direction: list[float]
    ) -> None:
        """Test that |grad U_h| settles near k b for the t target under the exp map."""
        unit = np.array(direction)
        norms = [float(np.linalg.norm(t_exp.grad(r * unit))) for r in (10.0, 30.0, 100.0, 1e3)]
        assert all(3.5 < n < 4.5 for n in norms)
        assert max(norms) - min(norms) < 0.2

    @pytest.mark.parametrize("direction", [[1.0, 0.0], [0.6, -0.8], [-0.28, 0.96]])
    def test_polynomial_transform_lightens_tails(
        self, gg_poly: TransformedTarget, direction: list[float]
    ) -> None:
        """Test that |grad U_h| / |y| grows with |y| for |x|^0.5 under the polynomial map."""
        unit = np.array(direction)
        radii = (10.0, 100.0, 1e3)
        ratios = [float(np.linalg.norm(gg_poly.grad(r * unit))) / r for r in radii]
        assert ratios[0] < ratios[1] < ratios[2]
        assert ratios[2] > 5.0 * ratios[0]

    def test_student_t_normalizer_preserved(self, t_exp: TransformedTarget) -> None:
        """Test that exp(-U_h) integrates to the normalizer of the t density."""
        radial, _ = quad(
            lambda r: r * math.exp(-t_exp.potential(np.array([r, 0.0]))),
            0.0,
            60.0,
            points=[1.0],
            limit=200,
        )
        # 2 pi int r (1 + r^2/4)^-3 dr = 2 pi
        assert radial == pytest.approx(1.0, rel=1e-6)

    def test_gen_gaussian_normalizer_preserved(self, gg_poly: TransformedTarget) -> None:
        """Test that exp(-U_h) integrates to the normalizer of exp(-|x|^0.5)."""
        radial, _ = quad(
            lambda r: r * math.exp(-gg_poly.potential(np.array([0.0, r]))),
            0.0,
            30.0,
            points=[1.0],
            limit=200,
        )
        # int r exp(-sqrt r) dr = 2 Gamma(4)
        assert radial == pytest.approx(12.0, rel=1e-6)

    def test_function_wrappers(self, t_exp: TransformedTarget) -> None:
        """Test the functional forms against the class."""
        y = np.array([0.5, 0.5])
        base, transform = t_exp.base, t_exp.transform
        assert transformed_potential(base, transform, y) == pytest.approx(t_exp.potential(y))
        np.testing.assert_allclose(transformed_grad(base, transform, y), t_exp.grad(y))


class TestTransformChecks:
    """Tests for the transform self-checks and path mapping."""

    @pytest.mark.parametrize(
        ("base", "transform"),
        [
            (StudentTTarget(3, 4.0), ExponentialTransform()),
            (GeneralizedGaussianTarget(2, 0.5), PolynomialTransform(1.0, 5)),
        ],
    )
    def test_checks_pass(
        self, base: object, transform: object, rng: np.random.Generator
    ) -> None:
        """Test that built-in transforms pass every self-check."""
        report = run_transform_checks(base, transform, rng, n_points=20)
        assert report.passed, report
        assert report.points == 20

    def test_join_error_small(self) -> None:
        """Test that derivatives are continuous at the branch points."""
        assert join_error(ExponentialTransform()) < 1e-8
        assert join_error(PolynomialTransform(1.0, 3)) < 1e-8

    def test_map_trajectory(self, mock_logger: Mock, rng: np.random.Generator) -> None:
        """Test that mapped points equal h(y(t))."""
        transform = ExponentialTransform()
        target = TransformedTarget(StudentTTarget(2, 4.0), transform)
        sampler = BouncyParticleSampler(mock_logger, target, ConstantRefresh(lambda_ref=1.0))
        trajectory = sampler.simulate(sampler.initial_state(rng), HorizonConfig(duration=5.0), rng)
        mapped = map_trajectory(transform, trajectory, [0.0, 2.5, 5.0])
        assert [t for t, _ in mapped] == [0.0, 2.5, 5.0]
        np.testing.assert_allclose(mapped[1][1], transform.apply(trajectory.position_at(2.5)))
