"""Target in transformed coordinates: U_h(y) = U(h(y)) - log det grad h(y).

The transformed potential is not shifted, so it may dip below zero near the
origin; the shift would not change the sampled law.
"""

from __future__ import annotations

import numpy as np

from bpskit.numerics import FloatArray
from bpskit.targets import GradientEvaluation, Target, TargetConfig

from .isotropic import IsotropicTransform


class TransformedTarget(Target):
    """Pulls a base target back through an isotropic transform.

    Isotropic bases are evaluated on their radial profile at log f(|y|), which
    keeps U_h and its gradient finite where f(|y|) itself overflows.
    """

    has_hessian = False

    def __init__(self, base: Target, transform: IsotropicTransform) -> None:
        """Create the transformed target.

        Args:
            base: Target in the original coordinates
            transform: Map from sampling coordinates y to original coordinates x
        """
        super().__init__(base.dimension)
        self.base = base
        self.transform = transform
        self.family = f"{base.family}+{transform.kind}"  # type: ignore[misc]

    @property
    def nonsmooth_radii(self) -> tuple[float, ...]:
        return tuple(sorted(set(self.base.nonsmooth_radii) | set(self.transform.nonsmooth_radii)))

    @property
    def config(self) -> TargetConfig | None:
        return self.base.config

    def _potential(self, y: FloatArray) -> float:
        log_det, _ = self.transform.log_det_jacobian(y)
        r = float(np.linalg.norm(y))
        if self.base.is_isotropic and r > 0.0:
            outer = self.base.radial_potential_from_log(self.transform.log_f(r))
        else:
            outer = self.base.potential(self.transform.apply(y))
        return outer - log_det

    def _grad(self, y: FloatArray) -> GradientEvaluation:
        r = float(np.linalg.norm(y))
        if r == 0.0:
            return GradientEvaluation(
                np.zeros_like(y), self.base.grad_with_flag(np.zeros_like(y)).degenerate
            )
        if self.base.is_isotropic:
            elasticity = self.base.radial_elasticity_from_log(self.transform.log_f(r))
            df_over_f = self.transform.df_over_f_gap(r) + 1.0 / r
            slope = elasticity * df_over_f - self.transform.log_det_slope(r, self.dimension)
            return GradientEvaluation((slope / r) * y, degenerate=False)
        _, log_det_grad = self.transform.log_det_jacobian(y)
        base_grad = self.base.grad(self.transform.apply(y))
        return GradientEvaluation(
            self.transform.jacobian(y) @ base_grad - log_det_grad, degenerate=False
        )


def transformed_potential(base: Target, transform: IsotropicTransform, y: FloatArray) -> float:
    """Evaluate U_h at y."""
    return TransformedTarget(base, transform).potential(y)


def transformed_grad(base: Target, transform: IsotropicTransform, y: FloatArray) -> FloatArray:
    """Evaluate the gradient of U_h at y."""
    return TransformedTarget(base, transform).grad(y)
