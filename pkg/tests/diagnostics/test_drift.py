"""Tests for the Lyapunov function, drift ratios, drift sweeps and regime advice."""

import math
from unittest.mock import Mock

import numpy as np
import pytest
from pydantic import ValidationError

from bpskit.diagnostics import (
    DriftGridConfig,
    DriftVerificationService,
    F,
    classify_regime,
    drift_ratio,
    drift_ratio_constant,
    drift_ratio_varying,
    log_lyapunov,
    lyapunov,
    regular_tail_bounds,
    verify_drift,
)
from bpskit.diagnostics.angular import c_d
from bpskit.exceptions import UnsupportedCapabilityError
from bpskit.numerics import FloatArray
from bpskit.sampler import ConstantRefresh, PositionDependentRefresh
from bpskit.targets import (
    GaussianTarget,
    GeneralizedGaussianTarget,
    GradientEvaluation,
    StudentTTarget,
    Target,
)
from bpskit.transform import ExponentialTransform, TransformedTarget

SMALL_GRID = {"directions_per_shell": 8, "velocity_angles": 32, "tangent_digits": 9}


class LogRadialTarget(Target):
    """U = (d/2) log(1 + |x|^2): <x, grad U> stays below d."""

    family = "log_radial"

    def _potential(self, x: FloatArray) -> float:
        return 0.5 * self.dimension * math.log1p(float(x @ x))

    def _grad(self, x: FloatArray) -> GradientEvaluation:
        return GradientEvaluation(self.dimension * x / (1.0 + float(x @ x)), degenerate=False)

    def _hessian(self, x: FloatArray) -> FloatArray:
        denom = 1.0 + float(x @ x)
        return (self.dimension / denom) * np.eye(self.dimension) - (
            2.0 * self.dimension / denom**2
        ) * np.outer(x, x)


class TestLyapunov:
    """Tests for the Lyapunov function."""

    def test_value_along_gradient(self, gaussian_2d: GaussianTarget) -> None:
        """Test V = exp(U/2) when -v points against the gradient."""
        policy = ConstantRefresh(lambda_ref=1.0)
        x, v = np.array([2.0, 0.0]), np.array([1.0, 0.0])
        assert log_lyapunov(gaussian_2d, policy, x, v) == pytest.approx(1.0)
        assert lyapunov(gaussian_2d, policy, x, v) == pytest.approx(math.e)

    def test_reverse_rate_includes_bounce(self, gaussian_2d: GaussianTarget) -> None:
        """Test V = exp(U/2) / sqrt(1 + |grad U|) when moving against the gradient."""
        policy = ConstantRefresh(lambda_ref=1.0)
        x, v = np.array([2.0, 0.0]), np.array([-1.0, 0.0])
        assert log_lyapunov(gaussian_2d, policy, x, v) == pytest.approx(1.0 - 0.5 * math.log(3.0))

    @pytest.mark.parametrize(
        "policy", [ConstantRefresh(lambda_ref=1.0), PositionDependentRefresh(lambda_ref=1.0)]
    )
    def test_continuous_across_tangent_velocities(
        self, policy: ConstantRefresh | PositionDependentRefresh
    ) -> None:
        """Test that V has no jump where <grad U, v> changes sign."""
        target = GeneralizedGaussianTarget(2, 1.5)
        x = np.array([3.0, 0.0])
        values = []
        for delta in (-1e-9, 0.0, 1e-9):
            angle = 0.5 * math.pi + delta
            v = np.array([math.cos(angle), math.sin(angle)])
            values.append(lyapunov(target, policy, x, v))
        assert values[0] == pytest.approx(values[1], rel=1e-7)
        assert values[2] == pytest.approx(values[1], rel=1e-7)

    def test_overflow_is_infinite(self) -> None:
        """Test that V reports inf rather than overflowing."""
        target = GeneralizedGaussianTarget(2, 2.0)
        policy = ConstantRefresh(lambda_ref=1.0)
        assert lyapunov(target, policy, np.array([40.0, 0.0]), np.array([0.0, 1.0])) == math.inf


class TestDriftRatio:
    """Tests for the closed-form drift ratio."""

    def test_gaussian_outward_motion_near_origin_is_positive(
        self, gaussian_2d: GaussianTarget
    ) -> None:
        """Test a positive ratio at |x| = 20 for lambda = 10 at 60 degrees."""
        v = np.array([0.5, math.sqrt(3.0) / 2.0])
        ratio = drift_ratio_constant(gaussian_2d, 10.0, np.array([20.0, 0.0]), v)
        expected = 10.0 + 20.0 * (math.sqrt(0.5) - 1.0) + 20.0 * (F(2.0, 2) - 0.5)
        assert ratio == pytest.approx(expected, rel=1e-10)
        assert ratio > 0.0

    def test_gaussian_far_out_is_negative(self, gaussian_2d: GaussianTarget) -> None:
        """Test negative ratios at |x| = 100 for outward, tangent and inward velocities."""
        x = np.array([100.0, 0.0])
        for theta in (0.3, 1.0, math.pi / 2, 2.0, 3.0):
            v = np.array([math.cos(theta), math.sin(theta)])
            assert drift_ratio_constant(gaussian_2d, 10.0, x, v) < 0.0

    def test_tangent_branch(self, gaussian_2d: GaussianTarget) -> None:
        """Test the exactly tangent velocity: only the refresh term remains."""
        ratio = drift_ratio_constant(
            gaussian_2d, 10.0, np.array([100.0, 0.0]), np.array([0.0, 1.0])
        )
        assert ratio == pytest.approx(20.0 * (F(10.0, 2) - 0.5), rel=1e-10)

    def test_inward_branch(self, gaussian_2d: GaussianTarget) -> None:
        """Test a = -|grad U|: transport a + curvature / W and refresh with W = L - a."""
        x, v = np.array([3.0, 0.0]), np.array([-1.0, 0.0])
        ratio = drift_ratio_constant(gaussian_2d, 1.0, x, v)
        expected = -3.0 + 1.0 / 4.0 + 2.0 * (2.0 * (0.5 + F(3.0, 2)) - 1.0)
        assert ratio == pytest.approx(expected, rel=1e-10)

    def test_varying_wrapper(self, gen_gaussian_2d: GeneralizedGaussianTarget) -> None:
        """Test that the varying-refresh wrapper matches the generic form."""
        policy = PositionDependentRefresh(lambda_ref=1.0)
        x, v = np.array([3.0, 1.0]), np.array([0.6, 0.8])
        assert drift_ratio_varying(gen_gaussian_2d, policy, x, v) == pytest.approx(
            drift_ratio(gen_gaussian_2d, policy, x, v)
        )

    def test_finite_difference_can_be_refused(self) -> None:
        """Test that targets without a Hessian need finite differences to be allowed."""
        target = TransformedTarget(StudentTTarget(2, 4.0), ExponentialTransform())
        policy = ConstantRefresh(lambda_ref=1.0)
        x, v = np.array([2.0, 0.0]), np.array([0.0, 1.0])
        with pytest.raises(UnsupportedCapabilityError):
            drift_ratio(target, policy, x, v, allow_finite_difference=False)
        assert math.isfinite(drift_ratio(target, policy, x, v))


class TestDriftSweep:
    """Tests for grid sweeps and the verification service."""

    def test_grid_config_validation(self) -> None:
        """Test radii validation and sorting."""
        assert DriftGridConfig(radii=[100.0, 20.0]).radii == [20.0, 100.0]
        with pytest.raises(ValidationError):
            DriftGridConfig(radii=[])
        with pytest.raises(ValidationError):
            DriftGridConfig(radii=[10.0, -1.0])

    def test_gaussian_confirmed_beyond_inner_shell(self, gaussian_2d: GaussianTarget) -> None:
        """Test that lambda = 10 is positive at |x| = 20 and negative from |x| = 50 on."""
        grid = DriftGridConfig(radii=[20.0, 50.0, 100.0], **SMALL_GRID)
        report = verify_drift(gaussian_2d, ConstantRefresh(lambda_ref=10.0), grid)
        assert report.shells[0].sup_ratio > 0.0
        assert report.verdict == "confirmed"
        assert report.radius_k in (50.0, 100.0)
        assert report.sup_ratio < 0.0
        assert [c.radius for c in report.candidates] == [20.0, 50.0, 100.0]

    def test_thin_tails_violate_with_constant_refresh(
        self, gen_gaussian_2d: GeneralizedGaussianTarget
    ) -> None:
        """Test that |x|^4 under constant refresh has positive ratios on every shell."""
        grid = DriftGridConfig(radii=[10.0, 100.0, 1000.0], **SMALL_GRID)
        report = verify_drift(gen_gaussian_2d, ConstantRefresh(lambda_ref=1.0), grid)
        assert report.verdict == "violated"
        assert report.radius_k is None
        assert all(shell.sup_ratio > 0.0 for shell in report.shells)

    def test_threads_do_not_change_report(self, gaussian_2d: GaussianTarget) -> None:
        """Test that the report is independent of the thread count."""
        policy = ConstantRefresh(lambda_ref=10.0)
        serial = verify_drift(gaussian_2d, policy, DriftGridConfig(radii=[20.0, 100.0], **SMALL_GRID))
        parallel = verify_drift(
            gaussian_2d, policy, DriftGridConfig(radii=[20.0, 100.0], threads=2, **SMALL_GRID)
        )
        assert parallel.shells == serial.shells
        assert parallel.radius_k == serial.radius_k

    def test_service_logs_verdict(self, mock_logger: Mock, gaussian_2d: GaussianTarget) -> None:
        """Test that the service logs the verdict."""
        service = DriftVerificationService(mock_logger)
        report = service.verify(
            gaussian_2d, ConstantRefresh(lambda_ref=10.0), DriftGridConfig(radii=[100.0], **SMALL_GRID)
        )
        mock_logger.info.assert_called_once()
        assert mock_logger.info.call_args[1]["verdict"] == report.verdict

    def test_service_logs_failures(self, mock_logger: Mock) -> None:
        """Test that sweep errors are logged and re-raised."""
        target = TransformedTarget(StudentTTarget(2, 4.0), ExponentialTransform())
        grid = DriftGridConfig(radii=[5.0], allow_finite_difference=False, **SMALL_GRID)
        with pytest.raises(UnsupportedCapabilityError):
            DriftVerificationService(mock_logger).verify(
                target, ConstantRefresh(lambda_ref=1.0), grid
            )
        mock_logger.exception.assert_called_once()


class TestRegime:
    """Tests for tail-regime classification."""

    def test_gaussian_is_regular_a(self, gaussian_2d: GaussianTarget) -> None:
        """Test linear gradient growth with bounded Hessian."""
        advice = classify_regime(gaussian_2d)
        assert advice.regime == "regular-a"
        assert advice.alpha1 == pytest.approx(1.0)
        assert advice.lambda_lower_bound == pytest.approx(9.0)
        assert isinstance(advice.recommended_policy, ConstantRefresh)
        assert advice.recommended_policy.lambda_ref == pytest.approx(9.9)

    def test_quartic_is_thin(self, gen_gaussian_2d: GeneralizedGaussianTarget) -> None:
        """Test that |x|^4 is thin-tailed and gets the position-dependent policy."""
        advice = classify_regime(gen_gaussian_2d)
        assert advice.regime == "thin"
        assert advice.gradient_slope == pytest.approx(3.0, abs=1e-6)
        assert isinstance(advice.recommended_policy, PositionDependentRefresh)

    def test_linear_potential_is_regular_b(self) -> None:
        """Test that U = |x| has a gradient floor and an upper refresh bound."""
        advice = classify_regime(GeneralizedGaussianTarget(2, 1.0))
        assert advice.regime == "regular-b"
        assert advice.alpha2 == pytest.approx(0.5)
        assert advice.lambda_upper_bound == pytest.approx(0.5 / c_d(2))
        assert advice.recommended_policy.lambda_ref == pytest.approx(0.45 / c_d(2))

    def test_student_t_is_thick_i(self, student_t_2d: StudentTTarget) -> None:
        """Test that t tails call for the exponential transform."""
        advice = classify_regime(student_t_2d)
        assert advice.regime == "thick-i"
        assert advice.recommended_transform.kind == "exp"

    def test_sub_linear_is_thick_ii(self) -> None:
        """Test that |x|^0.5 calls for the polynomial transform of degree 5."""
        advice = classify_regime(GeneralizedGaussianTarget(3, 0.5))
        assert advice.regime == "thick-ii"
        assert advice.tail_beta == pytest.approx(0.5, abs=1e-6)
        assert advice.recommended_transform.p == 5

    def test_borderline_is_unclassified(self) -> None:
        """Test that 1/|x| gradient decay with <x, grad U> below d is left unclassified."""
        advice = classify_regime(LogRadialTarget(2))
        assert advice.regime == "unclassified"
        assert advice.recommended_policy is None
        assert advice.recommended_transform is None
        assert len(advice.readings) == 4

    def test_regular_tail_bounds(self) -> None:
        """Test the two refresh-rate bounds."""
        bounds = regular_tail_bounds(1.0, 0.5, 2)
        assert bounds["lambda_lower_bound"] == 9.0
        assert bounds["lambda_upper_bound"] == pytest.approx(0.5 / c_d(2))
