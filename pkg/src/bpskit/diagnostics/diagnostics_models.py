"""Configuration and report models for drift verification and regime advice."""

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator

from bpskit.sampler import RefreshPolicy
from bpskit.transform import TransformConfig

DEFAULT_VELOCITY_ANGLES = 64
DEFAULT_TANGENT_DIGITS = 9

# Error messages
ERROR_EMPTY_RADII = "At least one shell radius is required"
ERROR_NONPOSITIVE_RADIUS = "Shell radii must be strictly positive"

Regime = Literal["regular-a", "regular-b", "thin", "thick-i", "thick-ii", "unclassified"]
Verdict = Literal["confirmed", "violated"]


class DriftGridConfig(BaseModel):
    """Evaluation grid for drift verification."""

    model_config = ConfigDict(
        frozen=True,
        extra="forbid",
        json_schema_extra={"examples": [{"radii": [20.0, 50.0, 100.0], "directions_per_shell": 16}]},
    )

    radii: list[float] = Field(..., description="Shell radii for positions", examples=[[20, 100]])
    directions_per_shell: int = Field(
        default=16, ge=1, description="Quasi-uniform position directions per shell"
    )
    velocity_angles: int = Field(
        default=DEFAULT_VELOCITY_ANGLES,
        ge=1,
        description="Midpoint angles in [0, pi] between velocity and gradient",
    )
    tangent_digits: int = Field(
        default=DEFAULT_TANGENT_DIGITS,
        ge=0,
        description="Extra angles pi/2 +- 10^-k, k = 1..tangent_digits, probing near-tangent motion",
    )
    allow_finite_difference: bool = Field(
        default=True, description="Permit finite-difference Hessians"
    )
    threads: int = Field(default=1, ge=1, description="Worker threads over shells")

    @field_validator("radii")
    @classmethod
    def validate_radii(cls, value: list[float]) -> list[float]:
        """Require a nonempty list of positive radii, stored in increasing order."""
        if not value:
            raise ValueError(ERROR_EMPTY_RADII)
        if any(r <= 0 for r in value):
            raise ValueError(ERROR_NONPOSITIVE_RADIUS)
        return sorted(value)


class ShellReport(BaseModel):
    """Worst drift ratio found on one shell."""

    radius: float
    sup_ratio: float = Field(..., description="Largest drift ratio on the shell")
    witness_x: list[float] = Field(..., description="Position attaining the largest ratio")
    witness_v: list[float] = Field(..., description="Velocity attaining the largest ratio")


class RadiusCandidate(BaseModel):
    """Sup of the drift ratio over all shells at or beyond a candidate radius."""

    radius: float
    sup_ratio: float


class DriftReport(BaseModel):
    """Grid evidence for a negative drift outside a ball.

    The verdict is "confirmed" exactly when sup_ratio < 0; nothing is claimed
    beyond the largest grid radius.
    """

    family: str
    dimension: int
    policy: RefreshPolicy
    grid: DriftGridConfig
    shells: list[ShellReport]
    candidates: list[RadiusCandidate]
    radius_k: float | None = Field(
        ..., description="Smallest grid radius with all ratios negative beyond it"
    )
    sup_ratio: float = Field(..., description="Sup of the ratio outside radius_k (or everywhere)")
    verdict: Verdict


class TailReading(BaseModel):
    """Tail quantities at one sampled radius."""

    radius: float
    grad_norm: float
    hessian_norm: float
    radial_gradient: float = Field(..., description="|x| |grad U(x)|")
    inner_product: float = Field(..., description="<x, grad U(x)>")
    normalized_gradient: float = Field(..., description="|x|^(-s) |grad U(x)| for the fitted slope s")


class RegimeAdvice(BaseModel):
    """Tail regime of a target with the sampler configuration it calls for."""

    regime: Regime
    gradient_slope: float = Field(..., description="Fitted log-log slope of |grad U|")
    hessian_slope: float = Field(..., description="Fitted log-log slope of the Hessian norm")
    recommended_policy: RefreshPolicy | None = None
    recommended_transform: TransformConfig | None = None
    alpha1: float | None = Field(default=None, description="Hessian norm bound (regular-a)")
    alpha2: float | None = Field(default=None, description="Half the gradient-norm floor (regular-b)")
    lambda_lower_bound: float | None = Field(
        default=None, description="Refresh rate must exceed this (regular-a)"
    )
    lambda_upper_bound: float | None = Field(
        default=None, description="Refresh rate must not exceed this (regular-b)"
    )
    tail_beta: float | None = Field(default=None, description="Fitted tail exponent (thick-ii)")
    readings: list[TailReading]
